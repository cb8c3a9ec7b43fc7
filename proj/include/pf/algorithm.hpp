#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pf/pattern.hpp"

namespace pf {

enum class TaskId { T1 = 1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11 };

inline int task_index(TaskId t) { return static_cast<int>(t); }
inline TaskId task_from_index(int i) { return static_cast<TaskId>(i); }
std::string task_name(TaskId t);
std::optional<TaskId> parse_task(const std::string& s);

struct BasicVariables {
  bool d1 = false, d2 = false, f = false, t = false, u = false, c = false;
  bool a = false, m = false, p = false, g = false, w = false;
};

struct PredicateVector {
  std::array<bool, 11> pre{};
  std::array<bool, 11> predicate{};

  int true_count() const;
  TaskId task() const;
};

struct MoveDirective {
  Point robot;
  Trajectory trajectory;
};

struct AlgorithmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DelegatedUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// external solvers for the g-gated task; empty slots mean unsupported
struct DelegateSolvers {
  std::function<std::vector<MoveDirective>(const Configuration&, const Pattern&)> gathering;
  std::function<std::vector<MoveDirective>(const Configuration&, const Pattern&)> leader;
};

// seeded faults used to check that the verifier notices broken algorithms
struct Mutations {
  bool m9_tangential = false;
  bool gotoc_ignore_forbidden = false;
  bool swap_t8_t9 = false;

  bool any() const { return m9_tangential || gotoc_ignore_forbidden || swap_t8_t9; }
};

struct AlgoOptions {
  Mutations mutations;
  const DelegateSolvers* delegates = nullptr;
};

BasicVariables basic_variables(const Configuration& R, const Pattern& F);
PredicateVector predicates(const BasicVariables& v, bool swap_t8_t9 = false);
PredicateVector predicates(const Configuration& R, const Pattern& F);
TaskId classify(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});

struct ComputeResult {
  TaskId task = TaskId::T11;
  std::vector<MoveDirective> moves;  // aligned with the snapshot order
};

ComputeResult compute(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});

// per-move entry points, all in the frame of R
std::vector<MoveDirective> go_to_ct(const std::vector<Point>& Rx, const Configuration& R, const Pattern& F,
                                    const AlgoOptions& opt = {});
std::vector<MoveDirective> distmin(const Configuration& R, const Pattern& F);
std::vector<MoveDirective> circle_form(double alpha, const Configuration& R);

std::vector<MoveDirective> move_m1(const Configuration& R, const Pattern& F);
std::vector<MoveDirective> move_m2(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});
std::vector<MoveDirective> move_m3(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});
std::vector<MoveDirective> move_m4(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});
std::vector<MoveDirective> move_m5(const Configuration& R, const Pattern& F);
std::vector<MoveDirective> move_m6(const Configuration& R);
std::vector<MoveDirective> move_m9(const Configuration& R, const Pattern& F, const AlgoOptions& opt = {});

int min_prime(int n);

}  // namespace pf
