#include "fieldkpi/kpi_efficiency.hpp"

#include <algorithm>
#include <set>

namespace fieldkpi {

TaskStats collect_task_stats(const RobotTimeline& timeline) {
  TaskStats stats;
  stats.n_total = static_cast<int>(timeline.assigned_task_ids.size());
  std::set<std::string> completed;
  std::set<std::string> started;
  for (const TaskAttempt& attempt : timeline.task_attempts) {
    ++stats.n_attempts;
    started.insert(attempt.task_id);
    if (attempt.outcome == AttemptOutcome::completed) {
      ++stats.n_success;
      completed.insert(attempt.task_id);
    }
  }
  stats.n_completed = static_cast<int>(completed.size());
  stats.n_never_started = static_cast<int>(std::count_if(
      timeline.assigned_task_ids.begin(), timeline.assigned_task_ids.end(),
      [&](const std::string& id) { return !started.count(id); }));
  return stats;
}

TaskStats operator+(const TaskStats& a, const TaskStats& b) {
  return {a.n_total + b.n_total, a.n_completed + b.n_completed, a.n_attempts + b.n_attempts,
          a.n_success + b.n_success, a.n_never_started + b.n_never_started};
}

std::optional<double> mapping_efficiency(const CoverageResult& area, double total_distance) {
  if (!(total_distance > 0.0)) return std::nullopt;
  return area.area / total_distance;
}

double mapping_rate(const CoverageResult& area, double t_mission) {
  return area.area / t_mission;
}

std::optional<double> task_success_ratio(const TaskStats& stats) {
  if (stats.n_total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(stats.n_completed) / static_cast<double>(stats.n_total);
}

double quantitative_operator_workload(
    const std::map<std::string, std::vector<InteractionEpisode>>& episodes, double t_mission) {
  IntervalSet all;
  for (const auto& [channel, list] : episodes) {
    for (const auto& ep : list) all.add(ep.interval.start, ep.interval.end);
  }
  return 100.0 * all.total_duration() / t_mission;
}

std::optional<double> subjective_workload(const std::optional<double>& tlx_score) {
  return tlx_score;
}

}  // namespace fieldkpi
