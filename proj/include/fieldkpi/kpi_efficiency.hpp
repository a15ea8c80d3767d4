#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fieldkpi/geometry.hpp"
#include "fieldkpi/timeline.hpp"

namespace fieldkpi {

/// Task counting for E.3 and R.4. Totals count distinct assigned task ids;
/// attempts count task_started events.
struct TaskStats {
  int n_total = 0;      // assigned tasks
  int n_completed = 0;  // tasks with a completing attempt
  int n_attempts = 0;
  int n_success = 0;    // attempts that ended in task_completed
  int n_never_started = 0;  // assigned but never attempted (reported, still in n_total)
};

TaskStats collect_task_stats(const RobotTimeline& timeline);
TaskStats operator+(const TaskStats& a, const TaskStats& b);

/// E.1, m^2 per m. Not applicable when nothing was driven.
std::optional<double> mapping_efficiency(const CoverageResult& area, double total_distance);

/// E.2, m^2 per s.
double mapping_rate(const CoverageResult& area, double t_mission);

/// E.3, percent of assigned tasks completed. Not applicable for zero tasks.
std::optional<double> task_success_ratio(const TaskStats& stats);

/// E.5, percent of mission time under operator interaction. Episodes from all
/// channels are unioned first: one operator cannot be double-counted.
double quantitative_operator_workload(
    const std::map<std::string, std::vector<InteractionEpisode>>& episodes, double t_mission);

/// E.4 passthrough of the externally assessed score; never computed here.
std::optional<double> subjective_workload(const std::optional<double>& tlx_score);

}  // namespace fieldkpi
