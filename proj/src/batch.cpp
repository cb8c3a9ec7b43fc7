#include "pf/batch.hpp"

namespace pf {

namespace {

BatchOutcome one(const Scenario& s, const BatchOptions& opt, const TransitionGraph& g) {
  RunResult r = run(s, opt.run);
  BatchOutcome out;
  out.outcome = r.outcome;
  out.events = r.events;
  out.final_task = r.final_task;
  out.stalled = r.stalled;
  out.diagnostic = r.diagnostic;
  if (opt.verify && !r.trace.records.empty()) out.report = analyze_trace(r.trace, Pattern(s.pattern, s.tol), g);
  if (opt.keep_traces) out.trace = std::move(r.trace);
  return out;
}

}  // namespace

std::vector<BatchOutcome> run_batch(const std::vector<Scenario>& scenarios, const BatchOptions& opt) {
  const TransitionGraph g = TransitionGraph::expected();
  std::vector<BatchOutcome> out(scenarios.size());
  const long m = static_cast<long>(scenarios.size());
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < m; ++i) out[i] = one(scenarios[i], opt, g);
  } else {
    for (long i = 0; i < m; ++i) out[i] = one(scenarios[i], opt, g);
  }
  return out;
}

}  // namespace pf
