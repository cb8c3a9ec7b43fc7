#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pf/verifier.hpp"

namespace pf {

struct BatchOptions {
  RunOptions run;
  bool verify = true;
  bool keep_traces = false;
  bool parallel = true;
};

struct BatchOutcome {
  Outcome outcome = Outcome::EventLimit;
  long events = 0;
  std::optional<TaskId> final_task;
  bool stalled = false;
  std::string diagnostic;
  TraceReport report;
  ExecutionTrace trace;
};

// independent runs; the parallel and serial paths return identical results
std::vector<BatchOutcome> run_batch(const std::vector<Scenario>& scenarios, const BatchOptions& opt = {});

}  // namespace pf
