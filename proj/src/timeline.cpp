#include "fieldkpi/timeline.hpp"

#include <algorithm>

#include "fieldkpi/error.hpp"

namespace fieldkpi {

namespace {

const IntervalSet kEmptySet;

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) add(iv.start, iv.end);
}

IntervalSet IntervalSet::single(double start, double end) {
  IntervalSet s;
  s.add(start, end);
  return s;
}

void IntervalSet::add(double start, double end) {
  if (!(start <= end)) throw Error("interval start must not exceed end");
  if (start == end) return;  // zero measure; nothing to merge
  // Find the run of existing intervals that overlap or touch [start, end].
  auto first = std::lower_bound(
      intervals_.begin(), intervals_.end(), start,
      [](const Interval& iv, double value) { return iv.end < value; });
  auto last = first;
  while (last != intervals_.end() && last->start <= end) {
    start = std::min(start, last->start);
    end = std::max(end, last->end);
    ++last;
  }
  const auto pos = intervals_.erase(first, last);
  intervals_.insert(pos, {start, end});
}

double IntervalSet::total_duration() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.duration();
  return total;
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out = a;
  for (const auto& iv : b.intervals()) out.add(iv);
  return out;
}

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  auto ia = a.intervals().begin();
  auto ib = b.intervals().begin();
  while (ia != a.intervals().end() && ib != b.intervals().end()) {
    const double lo = std::max(ia->start, ib->start);
    const double hi = std::min(ia->end, ib->end);
    if (lo < hi) out.add(lo, hi);
    if (ia->end < ib->end) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return out;
}

IntervalSet interval_complement(const IntervalSet& s, const Interval& span) {
  IntervalSet out;
  double cursor = span.start;
  for (const auto& iv : s.intervals()) {
    if (iv.end <= span.start || iv.start >= span.end) continue;
    const double lo = std::max(iv.start, span.start);
    if (cursor < lo) out.add(cursor, lo);
    cursor = std::max(cursor, std::min(iv.end, span.end));
  }
  if (cursor < span.end) out.add(cursor, span.end);
  return out;
}

IntervalSet interval_difference(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty()) return {};
  const Interval hull{a.intervals().front().start, a.intervals().back().end};
  return interval_intersection(a, interval_complement(b, hull));
}

const char* to_string(AttemptOutcome outcome) {
  switch (outcome) {
    case AttemptOutcome::completed: return "completed";
    case AttemptOutcome::failed: return "failed";
    case AttemptOutcome::open: return "open";
  }
  return "?";
}

const IntervalSet& RobotTimeline::states(RobotState s) const {
  const auto it = state_intervals.find(s);
  return it == state_intervals.end() ? kEmptySet : it->second;
}

RobotTimeline build_timeline(const RobotStreams& streams, const Interval& span) {
  RobotTimeline timeline;
  timeline.robot = streams.robot;
  for (RobotState s : {RobotState::idle, RobotState::active, RobotState::fault,
                       RobotState::manual}) {
    timeline.state_intervals.emplace(s, IntervalSet{});
  }

  // State partition. Robots idle until their first state event.
  RobotState current = RobotState::idle;
  bool current_unscheduled = false;
  double segment_start = span.start;
  const auto close_segment = [&](double until) {
    if (until > segment_start) {
      timeline.state_intervals[current].add(segment_start, until);
      if (current == RobotState::manual && current_unscheduled) {
        timeline.unscheduled_manual.add(segment_start, until);
      }
    }
  };
  for (const Event& e : streams.state_events) {
    const double t = std::clamp(e.t, span.start, span.end);
    close_segment(t);
    segment_start = std::max(segment_start, t);
    current = e.state;
    current_unscheduled = (e.state == RobotState::manual) && !e.scheduled;
  }
  close_segment(span.end);

  // Task attempts: one per task_started, closed by the next completed/failed
  // for the same task_id, numbered in time order.
  std::map<std::string, int> attempt_counts;
  std::map<std::string, std::size_t> open_attempt;  // task_id -> index into task_attempts
  for (const Event& e : streams.task_events) {
    switch (e.kind) {
      case EventKind::task_assigned:
        if (std::find(timeline.assigned_task_ids.begin(), timeline.assigned_task_ids.end(),
                      e.task_id) == timeline.assigned_task_ids.end()) {
          timeline.assigned_task_ids.push_back(e.task_id);
        }
        break;
      case EventKind::task_started: {
        TaskAttempt attempt;
        attempt.task_id = e.task_id;
        attempt.attempt = ++attempt_counts[e.task_id];
        attempt.start = e.t;
        attempt.end = span.end;
        attempt.outcome = AttemptOutcome::open;
        open_attempt[e.task_id] = timeline.task_attempts.size();
        timeline.task_attempts.push_back(std::move(attempt));
        break;
      }
      case EventKind::task_completed:
      case EventKind::task_failed: {
        const auto it = open_attempt.find(e.task_id);
        if (it == open_attempt.end()) {
          throw Error("task '" + e.task_id + "' closed without an open attempt");
        }
        TaskAttempt& attempt = timeline.task_attempts[it->second];
        attempt.end = e.t;
        attempt.outcome = e.kind == EventKind::task_completed ? AttemptOutcome::completed
                                                              : AttemptOutcome::failed;
        open_attempt.erase(it);
        break;
      }
      default:
        break;
    }
  }
  return timeline;
}

std::map<std::string, std::vector<InteractionEpisode>> interaction_episodes(
    const std::vector<Event>& operator_events, const Interval& span) {
  std::map<std::string, std::vector<InteractionEpisode>> episodes;
  struct OpenEpisode {
    double start;
    std::string kind;
  };
  std::map<std::string, std::optional<OpenEpisode>> open;
  for (const Event& e : operator_events) {
    const std::string channel = e.robot.value_or("");
    auto& slot = open[channel];
    if (e.kind == EventKind::operator_interaction_start) {
      if (slot) {
        throw Error("interaction start on channel '" + channel + "' while an episode is open");
      }
      slot = OpenEpisode{e.t, e.interaction_kind};
    } else if (e.kind == EventKind::operator_interaction_end) {
      if (!slot) {
        throw Error("interaction end on channel '" + channel + "' without a start");
      }
      episodes[channel].push_back({{slot->start, e.t}, slot->kind, false});
      slot.reset();
    }
  }
  for (auto& [channel, slot] : open) {
    if (slot) {
      episodes[channel].push_back({{slot->start, span.end}, slot->kind, true});
    }
  }
  return episodes;
}

IntervalSet neglect_intervals(const RobotTimeline& timeline,
                              const std::vector<InteractionEpisode>& episodes) {
  IntervalSet interaction;
  for (const auto& ep : episodes) {
    interaction.add(ep.interval.start, ep.interval.end);
  }
  return interval_difference(timeline.states(RobotState::active), interaction);
}

}  // namespace fieldkpi
