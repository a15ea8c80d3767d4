#include "fieldkpi/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "fieldkpi/error.hpp"
#include "fieldkpi/util.hpp"

namespace fieldkpi {

namespace {

using nlohmann::json;

struct KindName {
  EventKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {EventKind::mission_start, "mission_start"},
    {EventKind::mission_end, "mission_end"},
    {EventKind::task_assigned, "task_assigned"},
    {EventKind::task_started, "task_started"},
    {EventKind::task_completed, "task_completed"},
    {EventKind::task_failed, "task_failed"},
    {EventKind::robot_state, "robot_state"},
    {EventKind::operator_interaction_start, "operator_interaction_start"},
    {EventKind::operator_interaction_end, "operator_interaction_end"},
    {EventKind::pose, "pose"},
    {EventKind::measurement, "measurement"},
    {EventKind::resource_detected, "resource_detected"},
    {EventKind::instrument_placement, "instrument_placement"},
    {EventKind::remote_target, "remote_target"},
};

double require_number(const json& j, const char* key, int line) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing required field '") + key + "'", line);
  if (!it->is_number()) throw ParseError(std::string("field '") + key + "' must be a number", line);
  return it->get<double>();
}

std::string require_string(const json& j, const char* key, int line) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing required field '") + key + "'", line);
  if (!it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string", line);
  return it->get<std::string>();
}

bool optional_bool(const json& j, const char* key, bool fallback, int line) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean", line);
  return it->get<bool>();
}

Eigen::Vector3d read_xyz(const json& j, int line) {
  return {require_number(j, "x", line), require_number(j, "y", line),
          require_number(j, "z", line)};
}

json xyz_to_json(const Eigen::Vector3d& p) {
  return json{{"x", p.x()}, {"y", p.y()}, {"z", p.z()}};
}

// Known payload keys per kind; everything else is preserved in Event::extra.
std::vector<std::string> known_keys(EventKind kind) {
  std::vector<std::string> keys = {"t", "robot", "type"};
  switch (kind) {
    case EventKind::mission_start:
    case EventKind::mission_end:
    case EventKind::operator_interaction_end:
      break;
    case EventKind::task_assigned:
      keys.insert(keys.end(), {"task_id", "task_type"});
      break;
    case EventKind::task_started:
    case EventKind::task_completed:
      keys.push_back("task_id");
      break;
    case EventKind::task_failed:
      keys.insert(keys.end(), {"task_id", "reason"});
      break;
    case EventKind::robot_state:
      keys.insert(keys.end(), {"state", "scheduled"});
      break;
    case EventKind::operator_interaction_start:
      keys.push_back("kind");
      break;
    case EventKind::pose:
      keys.insert(keys.end(), {"x", "y", "z"});
      break;
    case EventKind::measurement:
      keys.insert(keys.end(), {"x", "y", "z", "instrument", "valid"});
      break;
    case EventKind::resource_detected:
      keys.insert(keys.end(), {"x", "y", "z", "resource_type"});
      break;
    case EventKind::instrument_placement:
      keys.insert(keys.end(), {"commanded", "achieved"});
      break;
    case EventKind::remote_target:
      keys.insert(keys.end(), {"target_id", "x", "y", "z"});
      break;
  }
  return keys;
}

std::string csv_trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(csv_trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double csv_number(const std::string& field, const std::filesystem::path& path, int line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw ParseError("invalid number '" + field + "' in " + path.string(), line);
  }
  return v;
}

void expect_header(const std::vector<std::string>& fields, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
  if (fields.size() < expected.size()) {
    throw ParseError("bad header in " + path.string(), 1);
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    std::string got = fields[i];
    std::transform(got.begin(), got.end(), got.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (got != expected[i]) {
      throw ParseError("bad header in " + path.string() + " (expected column '" + expected[i] +
                           "', got '" + fields[i] + "')",
                       1);
    }
  }
}

}  // namespace

const char* to_string(EventKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

const char* to_string(RobotState state) {
  switch (state) {
    case RobotState::idle: return "idle";
    case RobotState::active: return "active";
    case RobotState::fault: return "fault";
    case RobotState::manual: return "manual";
  }
  return "?";
}

std::optional<RobotState> robot_state_from_string(std::string_view name) {
  if (name == "idle") return RobotState::idle;
  if (name == "active") return RobotState::active;
  if (name == "fault") return RobotState::fault;
  if (name == "manual") return RobotState::manual;
  return std::nullopt;
}

const char* to_string(ViolationClass cls) {
  switch (cls) {
    case ViolationClass::missing_mission_start: return "missing_mission_start";
    case ViolationClass::duplicate_mission_start: return "duplicate_mission_start";
    case ViolationClass::missing_mission_end: return "missing_mission_end";
    case ViolationClass::duplicate_mission_end: return "duplicate_mission_end";
    case ViolationClass::event_outside_mission: return "event_outside_mission";
    case ViolationClass::non_monotonic_time: return "non_monotonic_time";
    case ViolationClass::invalid_timestamp: return "invalid_timestamp";
    case ViolationClass::nonfinite_coordinate: return "nonfinite_coordinate";
    case ViolationClass::unassigned_task: return "unassigned_task";
    case ViolationClass::task_close_without_open: return "task_close_without_open";
    case ViolationClass::task_reopened: return "task_reopened";
    case ViolationClass::interaction_end_without_start: return "interaction_end_without_start";
    case ViolationClass::interaction_start_while_open: return "interaction_start_while_open";
    case ViolationClass::zero_mission_span: return "zero_mission_span";
    case ViolationClass::tlx_out_of_range: return "tlx_out_of_range";
  }
  return "?";
}

bool ValidationReport::has(ViolationClass cls) const {
  return std::any_of(violations.begin(), violations.end(),
                     [cls](const Violation& v) { return v.cls == cls; });
}

Event event_from_json(const json& j, int line) {
  if (!j.is_object()) throw ParseError("event must be a JSON object", line);
  Event e;
  e.t = require_number(j, "t", line);

  if (const auto it = j.find("robot"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("field 'robot' must be a string or null", line);
    e.robot = it->get<std::string>();
  }

  const std::string type = require_string(j, "type", line);
  const auto kind = event_kind_from_string(type);
  if (!kind) throw ParseError("unknown event kind '" + type + "'", line);
  e.kind = *kind;

  switch (e.kind) {
    case EventKind::mission_start:
    case EventKind::mission_end:
    case EventKind::operator_interaction_end:
      break;
    case EventKind::task_assigned:
      e.task_id = require_string(j, "task_id", line);
      e.task_type = require_string(j, "task_type", line);
      break;
    case EventKind::task_started:
    case EventKind::task_completed:
      e.task_id = require_string(j, "task_id", line);
      break;
    case EventKind::task_failed:
      e.task_id = require_string(j, "task_id", line);
      if (const auto it = j.find("reason"); it != j.end() && it->is_string()) {
        e.reason = it->get<std::string>();
      }
      break;
    case EventKind::robot_state: {
      const std::string state = require_string(j, "state", line);
      const auto parsed = robot_state_from_string(state);
      if (!parsed) throw ParseError("unknown robot state '" + state + "'", line);
      e.state = *parsed;
      e.scheduled = optional_bool(j, "scheduled", true, line);
      break;
    }
    case EventKind::operator_interaction_start:
      if (const auto it = j.find("kind"); it != j.end() && it->is_string()) {
        e.interaction_kind = it->get<std::string>();
      }
      break;
    case EventKind::pose:
      e.position = read_xyz(j, line);
      break;
    case EventKind::measurement:
      e.position = read_xyz(j, line);
      e.instrument = require_string(j, "instrument", line);
      e.valid = optional_bool(j, "valid", true, line);
      break;
    case EventKind::resource_detected:
      e.position = read_xyz(j, line);
      e.resource_type = require_string(j, "resource_type", line);
      break;
    case EventKind::instrument_placement: {
      const auto cit = j.find("commanded");
      const auto ait = j.find("achieved");
      if (cit == j.end() || !cit->is_object()) {
        throw ParseError("missing required field 'commanded'", line);
      }
      if (ait == j.end() || !ait->is_object()) {
        throw ParseError("missing required field 'achieved'", line);
      }
      e.commanded = read_xyz(*cit, line);
      e.achieved = read_xyz(*ait, line);
      break;
    }
    case EventKind::remote_target:
      e.target_id = require_string(j, "target_id", line);
      e.position = read_xyz(j, line);
      break;
  }

  // Forward compatibility: unknown fields survive a parse/serialize cycle.
  const auto known = known_keys(e.kind);
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) e.extra[key] = value;
  }
  return e;
}

json event_to_json(const Event& e) {
  json j = e.extra.is_object() ? e.extra : json::object();
  j["t"] = e.t;
  j["robot"] = e.robot ? json(*e.robot) : json(nullptr);
  j["type"] = to_string(e.kind);
  switch (e.kind) {
    case EventKind::mission_start:
    case EventKind::mission_end:
    case EventKind::operator_interaction_end:
      break;
    case EventKind::task_assigned:
      j["task_id"] = e.task_id;
      j["task_type"] = e.task_type;
      break;
    case EventKind::task_started:
    case EventKind::task_completed:
      j["task_id"] = e.task_id;
      break;
    case EventKind::task_failed:
      j["task_id"] = e.task_id;
      j["reason"] = e.reason;
      break;
    case EventKind::robot_state:
      j["state"] = to_string(e.state);
      if (e.state == RobotState::manual) j["scheduled"] = e.scheduled;
      break;
    case EventKind::operator_interaction_start:
      j["kind"] = e.interaction_kind;
      break;
    case EventKind::pose:
      j["x"] = e.position.x();
      j["y"] = e.position.y();
      j["z"] = e.position.z();
      break;
    case EventKind::measurement:
      j["x"] = e.position.x();
      j["y"] = e.position.y();
      j["z"] = e.position.z();
      j["instrument"] = e.instrument;
      j["valid"] = e.valid;
      break;
    case EventKind::resource_detected:
      j["x"] = e.position.x();
      j["y"] = e.position.y();
      j["z"] = e.position.z();
      j["resource_type"] = e.resource_type;
      break;
    case EventKind::instrument_placement:
      j["commanded"] = xyz_to_json(e.commanded);
      j["achieved"] = xyz_to_json(e.achieved);
      break;
    case EventKind::remote_target:
      j["target_id"] = e.target_id;
      j["x"] = e.position.x();
      j["y"] = e.position.y();
      j["z"] = e.position.z();
      break;
  }
  return j;
}

std::vector<Event> parse_events(std::string_view text) {
  std::vector<Event> events;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    ++line_number;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON", line_number);
    events.push_back(event_from_json(j, line_number));
  }
  return events;
}

std::string serialize_events(const std::vector<Event>& events) {
  std::string out;
  for (const auto& e : events) {
    out += event_to_json(e).dump();
    out += '\n';
  }
  return out;
}

std::optional<std::filesystem::path> Manifest::resolve(
    const std::optional<std::string>& ref) const {
  if (!ref) return std::nullopt;
  return base_dir / *ref;
}

Manifest manifest_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("manifest must be a JSON object");
  Manifest m;
  m.base_dir = base_dir;

  const auto opt_string = [&](const char* key) -> std::optional<std::string> {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ParseError(std::string("manifest field '") + key + "' must be a string");
    return it->get<std::string>();
  };

  if (const auto s = opt_string("scenario")) {
    if (*s != "s1" && *s != "s2" && *s != "s3" && *s != "custom") {
      throw ParseError("manifest scenario must be one of s1, s2, s3, custom");
    }
    m.scenario = *s;
  }
  if (const auto p = opt_string("phase")) {
    if (*p != "p1" && *p != "p2" && *p != "full") {
      throw ParseError("manifest phase must be one of p1, p2, full");
    }
    m.phase = *p;
  }
  if (const auto it = j.find("robots"); it != j.end()) {
    if (!it->is_array()) throw ParseError("manifest field 'robots' must be an array");
    for (const auto& r : *it) {
      RobotInfo info;
      info.id = r.value("id", std::string());
      info.role = r.value("role", std::string());
      if (info.id.empty()) throw ParseError("manifest robot entry missing 'id'");
      if (info.role != "scout" && info.role != "scientist") {
        throw ParseError("manifest robot role must be 'scout' or 'scientist'");
      }
      m.robots.push_back(std::move(info));
    }
  }
  if (const auto it = j.find("tlx_score"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw ParseError("manifest field 'tlx_score' must be a number");
    m.tlx_score = it->get<double>();
  }
  m.events_file = opt_string("events");
  m.map_cloud = opt_string("map_cloud");
  m.gt_map_cloud = opt_string("gt_map_cloud");
  m.gt_resources = opt_string("gt_resources");
  m.gt_targets = opt_string("gt_targets");
  if (const auto it = j.find("gt_trajectories"); it != j.end()) {
    if (!it->is_object()) throw ParseError("manifest field 'gt_trajectories' must be an object");
    for (const auto& [robot, path] : it->items()) {
      if (!path.is_string()) throw ParseError("gt_trajectories values must be strings");
      m.gt_trajectories[robot] = path.get<std::string>();
    }
  }
  if (const auto it = j.find("count_scheduled_waits_as_idle"); it != j.end()) {
    if (!it->is_boolean()) {
      throw ParseError("manifest field 'count_scheduled_waits_as_idle' must be a boolean");
    }
    m.count_scheduled_waits_as_idle = it->get<bool>();
  }
  return m;
}

json manifest_to_json(const Manifest& m) {
  json j;
  j["scenario"] = m.scenario;
  j["phase"] = m.phase;
  j["robots"] = json::array();
  for (const auto& r : m.robots) j["robots"].push_back({{"id", r.id}, {"role", r.role}});
  if (m.tlx_score) j["tlx_score"] = *m.tlx_score;
  if (m.events_file) j["events"] = *m.events_file;
  if (m.map_cloud) j["map_cloud"] = *m.map_cloud;
  if (m.gt_map_cloud) j["gt_map_cloud"] = *m.gt_map_cloud;
  if (m.gt_resources) j["gt_resources"] = *m.gt_resources;
  if (m.gt_targets) j["gt_targets"] = *m.gt_targets;
  if (!m.gt_trajectories.empty()) {
    json t = json::object();
    for (const auto& [robot, path] : m.gt_trajectories) t[robot] = path;
    j["gt_trajectories"] = t;
  }
  j["count_scheduled_waits_as_idle"] = m.count_scheduled_waits_as_idle;
  return j;
}

MissionLog parse_log(const std::filesystem::path& path) {
  const std::string text = read_file(path);

  MissionLog log;
  log.manifest.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  // A manifest is a single JSON document with an "events" reference; anything
  // else is taken as a JSON-lines event file with a defaulted manifest.
  json doc = json::parse(text, nullptr, false);
  if (doc.is_object() && doc.contains("events")) {
    log.manifest = manifest_from_json(doc, log.manifest.base_dir);
    const auto events_path = log.manifest.resolve(log.manifest.events_file);
    if (!events_path) throw ParseError("manifest 'events' reference must be a path");
    log.events = parse_events(read_file(*events_path));
  } else {
    log.events = parse_events(text);
  }
  return log;
}

double MissionLog::mission_start_time() const {
  for (const auto& e : events) {
    if (e.kind == EventKind::mission_start) return e.t;
  }
  throw Error("log has no mission_start event");
}

double MissionLog::mission_end_time() const {
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->kind == EventKind::mission_end) return it->t;
  }
  throw Error("log has no mission_end event");
}

double MissionLog::mission_span() const { return mission_end_time() - mission_start_time(); }

ValidationReport validate_log(const MissionLog& log) {
  ValidationReport report;
  const auto flag = [&](ViolationClass cls, std::size_t index, std::string message) {
    report.violations.push_back({cls, index, std::move(message)});
  };

  std::size_t start_count = 0;
  std::size_t end_count = 0;
  std::optional<std::size_t> end_index;
  double prev_t = -std::numeric_limits<double>::infinity();
  std::map<std::string, bool> assigned;       // task_id -> seen assignment
  std::map<std::string, bool> attempt_open;   // task_id -> attempt in flight
  std::map<std::string, bool> channel_open;   // interaction channel -> episode in flight

  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const Event& e = log.events[i];

    if (!std::isfinite(e.t) || e.t < 0.0) {
      flag(ViolationClass::invalid_timestamp, i,
           "timestamp must be finite and non-negative, got " + std::to_string(e.t));
    } else {
      if (e.t < prev_t) {
        flag(ViolationClass::non_monotonic_time, i,
             "non-monotonic time: " + std::to_string(e.t) + " after " + std::to_string(prev_t));
      }
      prev_t = std::max(prev_t, e.t);
    }

    switch (e.kind) {
      case EventKind::mission_start:
        ++start_count;
        if (start_count > 1) {
          flag(ViolationClass::duplicate_mission_start, i, "mission_start occurs more than once");
        } else if (i != 0) {
          flag(ViolationClass::event_outside_mission, i,
               "mission_start must precede all other events");
        }
        break;
      case EventKind::mission_end:
        ++end_count;
        if (end_count > 1) {
          flag(ViolationClass::duplicate_mission_end, i, "mission_end occurs more than once");
        } else {
          end_index = i;
        }
        break;
      case EventKind::task_assigned:
        assigned[e.task_id] = true;
        break;
      case EventKind::task_started:
        if (!assigned.count(e.task_id)) {
          flag(ViolationClass::unassigned_task, i,
               "task_started for never-assigned task '" + e.task_id + "'");
        }
        if (attempt_open[e.task_id]) {
          flag(ViolationClass::task_reopened, i,
               "task '" + e.task_id + "' started while an attempt is open");
        }
        attempt_open[e.task_id] = true;
        break;
      case EventKind::task_completed:
      case EventKind::task_failed:
        if (!assigned.count(e.task_id)) {
          flag(ViolationClass::unassigned_task, i,
               std::string(to_string(e.kind)) + " for never-assigned task '" + e.task_id + "'");
        } else if (!attempt_open[e.task_id]) {
          flag(ViolationClass::task_close_without_open, i,
               std::string(to_string(e.kind)) + " for task '" + e.task_id +
                   "' without an open attempt");
        }
        attempt_open[e.task_id] = false;
        break;
      case EventKind::operator_interaction_start: {
        const std::string channel = e.robot.value_or("");
        if (channel_open[channel]) {
          flag(ViolationClass::interaction_start_while_open, i,
               "interaction start on channel '" + channel + "' while an episode is open");
        }
        channel_open[channel] = true;
        break;
      }
      case EventKind::operator_interaction_end: {
        const std::string channel = e.robot.value_or("");
        if (!channel_open[channel]) {
          flag(ViolationClass::interaction_end_without_start, i,
               "interaction end on channel '" + channel + "' without a start");
        }
        channel_open[channel] = false;
        break;
      }
      case EventKind::pose:
      case EventKind::measurement:
      case EventKind::resource_detected:
      case EventKind::remote_target:
        if (!e.position.allFinite()) {
          flag(ViolationClass::nonfinite_coordinate, i, "non-finite coordinates");
        }
        break;
      case EventKind::instrument_placement:
        if (!e.commanded.allFinite() || !e.achieved.allFinite()) {
          flag(ViolationClass::nonfinite_coordinate, i, "non-finite coordinates");
        }
        break;
      case EventKind::robot_state:
        break;
    }

    if (end_index && i > *end_index) {
      flag(ViolationClass::event_outside_mission, i, "event after mission_end");
    }
  }

  if (start_count == 0) {
    flag(ViolationClass::missing_mission_start, 0, "log has no mission_start event");
  }
  if (end_count == 0) {
    flag(ViolationClass::missing_mission_end, 0, "log has no mission_end event");
  }
  if (start_count == 1 && end_count == 1) {
    const double span = log.mission_end_time() - log.mission_start_time();
    if (!(span > 0.0)) {
      flag(ViolationClass::zero_mission_span, 0,
           "mission span must be positive, got " + std::to_string(span));
    }
  }
  if (log.manifest.tlx_score &&
      (*log.manifest.tlx_score < 0.0 || *log.manifest.tlx_score > 100.0)) {
    flag(ViolationClass::tlx_out_of_range, 0,
         "tlx_score out of range [0,100]: " + std::to_string(*log.manifest.tlx_score));
  }
  return report;
}

std::size_t RobotStreams::total() const {
  return task_events.size() + state_events.size() + poses.size() + measurements.size() +
         detections.size() + placements.size() + remote_targets.size();
}

Streams extract_streams(const MissionLog& log) {
  Streams streams;
  for (const Event& e : log.events) {
    const std::string robot = e.robot.value_or("");
    switch (e.kind) {
      case EventKind::mission_start:
      case EventKind::mission_end:
        break;
      case EventKind::operator_interaction_start:
      case EventKind::operator_interaction_end:
        streams.operator_events.push_back(e);
        break;
      default: {
        auto [it, inserted] = streams.per_robot.try_emplace(robot);
        if (inserted) it->second.robot = robot;
        RobotStreams& rs = it->second;
        switch (e.kind) {
          case EventKind::task_assigned:
          case EventKind::task_started:
          case EventKind::task_completed:
          case EventKind::task_failed:
            rs.task_events.push_back(e);
            break;
          case EventKind::robot_state:
            rs.state_events.push_back(e);
            break;
          case EventKind::pose:
            rs.poses.push_back(e);
            break;
          case EventKind::measurement:
            rs.measurements.push_back(e);
            break;
          case EventKind::resource_detected:
            rs.detections.push_back(e);
            break;
          case EventKind::instrument_placement:
            rs.placements.push_back(e);
            break;
          case EventKind::remote_target:
            rs.remote_targets.push_back(e);
            break;
          default:
            break;
        }
        break;
      }
    }
  }
  return streams;
}

Trajectory trajectory_from_poses(const std::vector<Event>& poses) {
  Trajectory traj;
  traj.samples.reserve(poses.size());
  for (const Event& e : poses) {
    if (!traj.samples.empty() && e.t <= traj.samples.back().t) continue;
    traj.samples.push_back({e.t, e.position});
  }
  return traj;
}

std::vector<GtResource> load_resources_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 1);
  expect_header(csv_split(line), {"id", "x", "y", "z", "type"}, path);
  std::vector<GtResource> out;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (csv_trim(line).empty()) continue;
    const auto f = csv_split(line);
    if (f.size() < 5) throw ParseError("expected 5 columns in " + path.string(), line_number);
    out.push_back({f[0],
                   {csv_number(f[1], path, line_number), csv_number(f[2], path, line_number),
                    csv_number(f[3], path, line_number)},
                   f[4]});
  }
  return out;
}

std::vector<GtTarget> load_targets_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 1);
  expect_header(csv_split(line), {"target_id", "x", "y", "z"}, path);
  std::vector<GtTarget> out;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (csv_trim(line).empty()) continue;
    const auto f = csv_split(line);
    if (f.size() < 4) throw ParseError("expected 4 columns in " + path.string(), line_number);
    out.push_back({f[0],
                   {csv_number(f[1], path, line_number), csv_number(f[2], path, line_number),
                    csv_number(f[3], path, line_number)}});
  }
  return out;
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 1);
  expect_header(csv_split(line), {"t", "x", "y", "z"}, path);
  Trajectory traj;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (csv_trim(line).empty()) continue;
    const auto f = csv_split(line);
    if (f.size() < 4) throw ParseError("expected 4 columns in " + path.string(), line_number);
    TrajectorySample s;
    s.t = csv_number(f[0], path, line_number);
    s.p = {csv_number(f[1], path, line_number), csv_number(f[2], path, line_number),
           csv_number(f[3], path, line_number)};
    if (!traj.samples.empty() && s.t <= traj.samples.back().t) {
      throw ParseError("timestamps must be strictly increasing in " + path.string(), line_number);
    }
    traj.samples.push_back(s);
  }
  return traj;
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  PointCloud cloud;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string line =
        text.substr(pos, eol == std::string::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const char* cursor = line.c_str();
    double coords[3];
    for (double& c : coords) {
      char* end = nullptr;
      c = std::strtod(cursor, &end);
      if (end == cursor) {
        throw ParseError("expected 'x y z' in " + path.string(), line_number);
      }
      cursor = end;
    }
    cloud.emplace_back(coords[0], coords[1], coords[2]);
  }
  return cloud;
}

std::string serialize_point_cloud(const PointCloud& cloud) {
  std::string out;
  out.reserve(cloud.size() * 24);
  char buf[80];
  for (const auto& p : cloud) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out += buf;
  }
  return out;
}

}  // namespace fieldkpi
