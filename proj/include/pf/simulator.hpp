#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pf/algorithm.hpp"

namespace pf {

enum class SchedulerKind { FSync, SSync, SAsync, Async };

std::string scheduler_name(SchedulerKind k);
std::optional<SchedulerKind> parse_scheduler(const std::string& s);

struct AdversaryParams {
  SchedulerKind kind = SchedulerKind::Async;
  std::uint64_t seed = 1;
  double nu = 0.05;
  int fairness = 0;  // 0 selects 40 * n
  bool rigid = false;

  int fairness_bound(size_t n) const { return fairness > 0 ? fairness : static_cast<int>(40 * n); }
};

struct Limits {
  long max_events = 100000;
  long stall = 0;  // 0 selects 10 * n

  long stall_bound(size_t n) const { return stall > 0 ? stall : static_cast<long>(10 * n); }
};

struct Scenario {
  std::vector<Point> robots;
  std::vector<Point> pattern;
  AdversaryParams scheduler;
  Limits limits;
  Tolerance tol;
};

struct InvalidScenario : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate_scenario(const Scenario& s);

enum class Phase { Wait, Look, Compute, Move };
enum class EventKind { Look, Compute, MoveStart, MoveProgress, MoveEnd };

std::string event_name(EventKind k);
std::optional<EventKind> parse_event(const std::string& s);

// a committed move that has not finished yet, as seen at a look
struct PendingSummary {
  int robot = 0;
  long source_event = 0;  // the look its plan was computed from
  Trajectory remaining;
};

struct TraceRecord {
  long e = 0;
  double t = 0.0;
  int r = 0;
  EventKind k = EventKind::Look;
  std::optional<TaskId> task;
  std::vector<Point> pos;               // look only
  std::vector<PendingSummary> pending;  // look only
  bool reached = false;                 // move-end only: stopped at the planned target
  double length = 0.0;                  // compute/move-start: planned length; move-end: travelled
};

struct ExecutionTrace {
  std::vector<TraceRecord> records;
};

enum class Outcome { Formed, UnsolvableInput, DelegatedUnsupported, EventLimit };

std::string outcome_name(Outcome o);

struct RunOptions {
  AlgoOptions algo;
};

struct RunResult {
  ExecutionTrace trace;
  Outcome outcome = Outcome::EventLimit;
  long events = 0;
  std::optional<TaskId> final_task;
  bool stalled = false;
  std::string diagnostic;
};

RunResult run(const Scenario& scenario, const RunOptions& opt = {});

// local coordinate systems: rotation + uniform scale about the robot, no reflection
Similarity draw_lcs(std::mt19937_64& rng, const Point& robot);
Configuration apply_lcs(const Configuration& snapshot, const Similarity& lcs);
MoveDirective unapply_lcs(const MoveDirective& d, const Similarity& lcs);

}  // namespace pf
