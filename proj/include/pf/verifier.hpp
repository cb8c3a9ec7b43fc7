#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pf/simulator.hpp"

namespace pf {

struct TransitionGraph {
  std::set<std::pair<int, int>> edges;

  static TransitionGraph expected();
  bool has(TaskId a, TaskId b) const { return edges.count({task_index(a), task_index(b)}) > 0; }
  std::string to_dot(const std::map<std::pair<int, int>, long>* counts = nullptr) const;
};

enum class TransitionKind { Stationary, AlmostStationary, Robust, Unclassified };
std::string kind_name(TransitionKind k);

enum class Property { H1, H2, H3, H3pp, H4, Collision, Stall };
std::string property_name(Property p);

struct Violation {
  Property property = Property::H1;
  long event = 0;
  std::string details;
};

// all looks sharing one instant form a snapshot
struct Snapshot {
  double t = 0.0;
  size_t record = 0;  // index of the first look record at this instant
  long e = 0;
  std::vector<Point> pos;
  TaskId label = TaskId::T1;
};

std::vector<Snapshot> snapshots(const ExecutionTrace& trace);
bool same_configuration(const std::vector<Point>& a, const std::vector<Point>& b, const Tolerance& tol);

struct CheckOptions {
  long stall_bound = 0;  // 0 selects 10 * n
  bool classify_kinds = true;
};

struct TraceReport {
  std::vector<Violation> violations;
  std::map<std::pair<int, int>, long> edges;
  std::map<std::pair<int, int>, std::map<TransitionKind, long>> kinds;
  std::vector<TaskId> collapsed;
};

TraceReport analyze_trace(const ExecutionTrace& trace, const Pattern& F, const TransitionGraph& expected,
                          const CheckOptions& opt = {});
std::vector<Violation> check_trace(const ExecutionTrace& trace, const Pattern& F,
                                   const TransitionGraph& expected = TransitionGraph::expected());

// kind of the transition between snapshot i and i+1
TransitionKind classify_transition(const ExecutionTrace& trace, const std::vector<Snapshot>& snaps, size_t i,
                                   const Pattern& F);
TransitionKind classify_transition(const ExecutionTrace& trace, size_t i, const Pattern& F);

// checks on a single configuration shared by the trace checker and the explorer
void check_configuration(const std::vector<Point>& pos, TaskId label, const Pattern& F, long event,
                         std::vector<Violation>& out);

struct ExploreOptions {
  int activations = 2;                        // k: everyone, or the first mover only
  std::vector<double> fractions{0.5, 1.0};    // j: truncation points
  int depth_bound = 40;
  double nu = 0.25;
  long state_limit = 200000;
  bool parallel = true;
  AlgoOptions algo;
};

struct ExploreResult {
  std::set<int> classes;
  std::set<std::pair<int, int>> edges;
  std::vector<Violation> violations;
  long states = 0;
  int longest_path = 0;
  int max_t2_entries = 0;
  bool all_terminate = true;
};

ExploreResult explore(const std::vector<Point>& robots, const Pattern& F, const ExploreOptions& opt = {});

}  // namespace pf
