#pragma once

#include <optional>
#include <vector>

#include "fieldkpi/kpi_efficiency.hpp"
#include "fieldkpi/timeline.hpp"

namespace fieldkpi {

/// Per-robot interaction demand (Robot Attention Demand and its complement).
/// t_IE and t_NT are characteristic (mean) durations, not totals: totals
/// would make RAD collapse into the workload ratio E.5.
struct AutonomyStats {
  double t_ie_mean = 0.0;  // s, mean interaction-episode duration on the robot's channel
  double t_nt_mean = 0.0;  // s, mean neglect-interval duration
  double rad = 0.0;
  double autonomy_ratio = 1.0;  // 1 - rad
};

/// R.1, percent of mission time in idle or fault. When
/// `count_scheduled_waits_as_idle` is false only fault time counts.
double robot_downtime(const RobotTimeline& timeline, double t_mission,
                      bool count_scheduled_waits_as_idle = true);

/// R.2. Zero episodes mean RAD 0 (autonomy 1); episodes with zero neglect
/// time mean RAD 1 (autonomy 0).
AutonomyStats autonomy_ratio(const RobotTimeline& timeline,
                             const std::vector<InteractionEpisode>& channel_episodes);

/// R.3, percent of mission time in manual states entered with scheduled=false.
double unscheduled_manual_time(const RobotTimeline& timeline, double t_mission);

/// R.4, percent of attempts that were retries. Not applicable for zero attempts.
std::optional<double> retry_ratio(const TaskStats& stats);

}  // namespace fieldkpi
