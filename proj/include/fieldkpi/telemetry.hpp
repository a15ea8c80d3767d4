#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fieldkpi/geometry.hpp"

namespace fieldkpi {

enum class EventKind {
  mission_start,
  mission_end,
  task_assigned,
  task_started,
  task_completed,
  task_failed,
  robot_state,
  operator_interaction_start,
  operator_interaction_end,
  pose,
  measurement,
  resource_detected,
  instrument_placement,
  remote_target,
};

enum class RobotState { idle, active, fault, manual };

const char* to_string(EventKind kind);
const char* to_string(RobotState state);
std::optional<EventKind> event_kind_from_string(std::string_view name);
std::optional<RobotState> robot_state_from_string(std::string_view name);

/// One mission event. `kind` selects which payload fields are meaningful;
/// the rest stay at their defaults. Unknown JSON keys are kept in `extra`
/// and re-emitted on serialization.
struct Event {
  double t = 0.0;
  std::optional<std::string> robot;  // nullopt = team-level
  EventKind kind = EventKind::mission_start;

  std::string task_id;     // task_*
  std::string task_type;   // task_assigned
  std::string reason;      // task_failed
  RobotState state = RobotState::idle;  // robot_state
  bool scheduled = true;                // robot_state (meaningful for manual)
  std::string interaction_kind;         // operator_interaction_start
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // pose/measurement/detection/remote_target
  std::string instrument;  // measurement
  bool valid = true;       // measurement
  std::string resource_type;  // resource_detected
  Eigen::Vector3d commanded = Eigen::Vector3d::Zero();  // instrument_placement
  Eigen::Vector3d achieved = Eigen::Vector3d::Zero();   // instrument_placement
  std::string target_id;  // remote_target

  nlohmann::json extra = nlohmann::json::object();
};

struct RobotInfo {
  std::string id;
  std::string role;  // "scout" or "scientist"
};

/// Mission manifest ("mission.json"). File references are relative to
/// `base_dir`, the directory the manifest was loaded from.
struct Manifest {
  std::string scenario = "custom";  // s1, s2, s3, custom
  std::string phase = "full";       // p1, p2, full
  std::vector<RobotInfo> robots;
  std::optional<double> tlx_score;  // externally assessed subjective workload
  std::optional<std::string> events_file;
  std::optional<std::string> map_cloud;
  std::optional<std::string> gt_map_cloud;
  std::optional<std::string> gt_resources;
  std::optional<std::string> gt_targets;
  std::map<std::string, std::string> gt_trajectories;  // robot id -> csv path
  bool count_scheduled_waits_as_idle = true;
  std::filesystem::path base_dir;

  std::optional<std::filesystem::path> resolve(const std::optional<std::string>& ref) const;
};

struct MissionLog {
  std::vector<Event> events;
  Manifest manifest;

  double mission_start_time() const;
  double mission_end_time() const;
  double mission_span() const;  // t_mission
};

enum class ViolationClass {
  missing_mission_start,
  duplicate_mission_start,
  missing_mission_end,
  duplicate_mission_end,
  event_outside_mission,
  non_monotonic_time,
  invalid_timestamp,
  nonfinite_coordinate,
  unassigned_task,
  task_close_without_open,
  task_reopened,
  interaction_end_without_start,
  interaction_start_while_open,
  zero_mission_span,
  tlx_out_of_range,
};

const char* to_string(ViolationClass cls);

struct Violation {
  ViolationClass cls;
  std::size_t event_index = 0;  // 0-based index into MissionLog::events (when applicable)
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(ViolationClass cls) const;
};

/// Parses a mission. `path` may be a manifest ("mission.json" document with an
/// "events" reference) or a bare JSON-lines event file, in which case the
/// manifest is defaulted. Throws ParseError on malformed input.
MissionLog parse_log(const std::filesystem::path& path);

/// Parses one event per line from JSON-lines text.
std::vector<Event> parse_events(std::string_view text);

Event event_from_json(const nlohmann::json& j, int line_number = 0);
nlohmann::json event_to_json(const Event& event);

/// Canonical JSON-lines form (alphabetical keys, shortest float repr).
std::string serialize_events(const std::vector<Event>& events);

nlohmann::json manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Checks every structural invariant; violations are data, not exceptions.
ValidationReport validate_log(const MissionLog& log);

/// Per-robot event streams. Events with robot == nullopt land on the "" key.
struct RobotStreams {
  std::string robot;
  std::vector<Event> task_events;
  std::vector<Event> state_events;
  std::vector<Event> poses;
  std::vector<Event> measurements;
  std::vector<Event> detections;
  std::vector<Event> placements;
  std::vector<Event> remote_targets;

  std::size_t total() const;
};

struct Streams {
  std::map<std::string, RobotStreams> per_robot;
  std::vector<Event> operator_events;  // all channels; channel = event.robot ("" = team)
};

/// Lossless partition of all events except the two mission markers.
Streams extract_streams(const MissionLog& log);

/// Estimated trajectory from a robot's pose events (duplicate timestamps dropped).
Trajectory trajectory_from_poses(const std::vector<Event>& poses);

struct GtResource {
  std::string id;
  Eigen::Vector3d p;
  std::string type;
};

struct GtTarget {
  std::string id;
  Eigen::Vector3d p;
};

// Ground-truth file formats (CSV with header row; cloud as "x y z" lines).
std::vector<GtResource> load_resources_csv(const std::filesystem::path& path);
std::vector<GtTarget> load_targets_csv(const std::filesystem::path& path);
Trajectory load_trajectory_csv(const std::filesystem::path& path);
PointCloud load_point_cloud(const std::filesystem::path& path);

std::string serialize_point_cloud(const PointCloud& cloud);

}  // namespace fieldkpi
