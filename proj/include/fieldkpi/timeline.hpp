#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fieldkpi/telemetry.hpp"

namespace fieldkpi {

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double duration() const { return end - start; }
};

/// Sorted, pairwise-disjoint intervals on the real line. Touching intervals
/// merge on insertion (closed-interval semantics; zero-measure overlaps are
/// irrelevant to every duration-based KPI).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet single(double start, double end);

  void add(double start, double end);
  void add(const Interval& iv) { add(iv.start, iv.end); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  double total_duration() const;

 private:
  std::vector<Interval> intervals_;
};

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b);
/// Complement of `s` within `span`.
IntervalSet interval_complement(const IntervalSet& s, const Interval& span);
/// a minus b.
IntervalSet interval_difference(const IntervalSet& a, const IntervalSet& b);

enum class AttemptOutcome { completed, failed, open };

const char* to_string(AttemptOutcome outcome);

struct TaskAttempt {
  std::string task_id;
  int attempt = 1;  // 1..k in time order per task_id
  double start = 0.0;
  double end = 0.0;  // mission end for open attempts
  AttemptOutcome outcome = AttemptOutcome::open;
};

/// Per-robot activity timeline: a state partition of the mission span plus
/// the task attempt history.
struct RobotTimeline {
  std::string robot;
  std::map<RobotState, IntervalSet> state_intervals;
  IntervalSet unscheduled_manual;  // manual intervals entered with scheduled=false
  std::vector<TaskAttempt> task_attempts;
  std::vector<std::string> assigned_task_ids;  // distinct, in assignment order

  const IntervalSet& states(RobotState s) const;
};

/// Builds the timeline for one robot. The state partition covers the span
/// exactly; time before the first state event is idle.
/// Throws Error on task events that close a never-opened attempt.
RobotTimeline build_timeline(const RobotStreams& streams, const Interval& span);

struct InteractionEpisode {
  Interval interval;
  std::string kind;
  bool unterminated = false;  // start without end, closed at mission end
};

/// Pairs operator interaction start/end events per channel ("" = team).
/// Zero-duration episodes are kept. Throws Error on an end without a start.
std::map<std::string, std::vector<InteractionEpisode>> interaction_episodes(
    const std::vector<Event>& operator_events, const Interval& span);

/// Productive unattended stretches: active-state intervals minus the robot's
/// interaction episodes.
IntervalSet neglect_intervals(const RobotTimeline& timeline,
                              const std::vector<InteractionEpisode>& episodes);

}  // namespace fieldkpi
