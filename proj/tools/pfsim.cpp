#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "pf/batch.hpp"
#include "pf/generator.hpp"
#include "pf/render.hpp"
#include "pf/scenario_io.hpp"

using namespace pf;

namespace {

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Formed: return 0;
    case Outcome::UnsolvableInput: return 2;
    case Outcome::DelegatedUnsupported: return 3;
    case Outcome::EventLimit: return 4;
  }
  return 4;
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string scheduler;
  bool rigid = false;
  std::optional<long> max_events;
  std::optional<double> tolerance;
};

void apply(const Overrides& o, Scenario& s) {
  if (o.seed) s.scheduler.seed = *o.seed;
  if (!o.scheduler.empty()) s.scheduler.kind = *parse_scheduler(o.scheduler);
  if (o.rigid) s.scheduler.rigid = true;
  if (o.max_events) s.limits.max_events = *o.max_events;
  if (o.tolerance) s.tol = Tolerance(*o.tolerance, *o.tolerance);
}

void summary(const std::string& name, Outcome o, long events, const std::optional<TaskId>& task,
             const std::string& diag) {
  std::cout << name << ": outcome=" << outcome_name(o) << " events=" << events
            << " final=" << (task ? task_name(*task) : "-");
  if (!diag.empty()) std::cout << " (" << diag << ")";
  std::cout << "\n";
}

int cmd_run(const std::vector<std::string>& paths, const std::string& out, const Overrides& ov, bool batch) {
  std::vector<Scenario> scen;
  for (const std::string& p : paths) {
    scen.push_back(load_scenario(p));
    apply(ov, scen.back());
  }
  if (!batch) {
    if (scen.size() != 1) throw CLI::ValidationError("run", "several scenarios need --batch");
    RunResult r = run(scen[0]);
    if (!out.empty()) save_trace(r.trace, out);
    summary(paths[0], r.outcome, r.events, r.final_task, r.diagnostic);
    return exit_code(r.outcome);
  }
  BatchOptions bo;
  bo.verify = false;
  bo.keep_traces = !out.empty();
  std::vector<BatchOutcome> res = run_batch(scen, bo);
  if (!out.empty()) std::filesystem::create_directories(out);
  int code = 0;
  for (size_t i = 0; i < res.size(); ++i) {
    summary(paths[i], res[i].outcome, res[i].events, res[i].final_task, res[i].diagnostic);
    if (!out.empty())
      save_trace(res[i].trace, out + "/" + std::filesystem::path(paths[i]).stem().string() + ".jsonl");
    code = std::max(code, exit_code(res[i].outcome));
  }
  return code;
}

int cmd_verify(const std::string& trace_path, const std::string& scenario_path, const std::string& dot_path,
               std::optional<double> tolerance) {
  Scenario s = load_scenario(scenario_path);
  if (tolerance) s.tol = Tolerance(*tolerance, *tolerance);
  ExecutionTrace t = load_trace(trace_path);
  TraceReport rep;
  try {
    rep = analyze_trace(t, Pattern(s.pattern, s.tol), TransitionGraph::expected());
  } catch (const std::runtime_error& e) {
    throw SchemaError(e.what(), 0, 0);
  }
  std::cout << violations_report(rep.violations, &rep);
  if (!dot_path.empty()) {
    TransitionGraph observed;
    for (const auto& [e, n] : rep.edges) observed.edges.insert(e);
    write_file(dot_path, observed.to_dot(&rep.edges));
  }
  return rep.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfsim: pattern formation by oblivious asynchronous robots"};
  app.require_subcommand(1);
  Overrides ov;
  auto add_overrides = [&ov](CLI::App* c) {
    c->add_option("--seed", ov.seed, "scheduler seed");
    c->add_option("--scheduler", ov.scheduler, "fsync, ssync, sasync or async")
        ->check(CLI::IsMember({"fsync", "ssync", "sasync", "async"}));
    c->add_flag("--rigid", ov.rigid, "moves are never truncated");
    c->add_option("--max-events", ov.max_events, "event limit");
    c->add_option("--tolerance", ov.tolerance, "length and angle tolerance")->check(CLI::PositiveNumber);
  };

  auto* run_cmd = app.add_subcommand("run", "simulate a scenario and write its trace");
  std::vector<std::string> run_paths;
  std::string run_out;
  bool batch = false;
  run_cmd->add_option("scenario", run_paths, "scenario file(s)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--out", run_out, "trace file, or directory with --batch");
  run_cmd->add_flag("--batch", batch, "run several scenarios on a worker pool");
  add_overrides(run_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check a trace and print a violations report");
  std::string v_trace, v_scen, v_dot;
  verify_cmd->add_option("trace", v_trace)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("scenario", v_scen)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--dot", v_dot, "write the observed transition graph");
  verify_cmd->add_option("--tolerance", ov.tolerance)->check(CLI::PositiveNumber);

  auto* gen_cmd = app.add_subcommand("gen", "generate a solvable scenario");
  int g_n = 8, g_rho = 2;
  std::uint64_t g_seed = 1;
  std::string g_out, g_sched = "async";
  bool allow_delegated = false, g_rigid = false;
  gen_cmd->add_option("-n,--robots", g_n)->required()->check(CLI::Range(3, 1000));
  gen_cmd->add_option("--rho", g_rho, "symmetricity of the pattern")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--scheduler", g_sched)->check(CLI::IsMember({"fsync", "ssync", "sasync", "async"}));
  gen_cmd->add_flag("--rigid", g_rigid);
  gen_cmd->add_flag("--allow-delegated", allow_delegated, "permit patterns that need an external solver");
  gen_cmd->add_option("-o,--out", g_out, "output file (default stdout)");

  auto* render_cmd = app.add_subcommand("render", "write one SVG per look event");
  std::string r_trace, r_dir, r_scen;
  render_cmd->add_option("trace", r_trace)->required()->check(CLI::ExistingFile);
  render_cmd->add_option("out_dir", r_dir)->required();
  render_cmd->add_option("--scenario", r_scen, "draw parking circles and targets")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run_paths, run_out, ov, batch);
    if (*verify_cmd) return cmd_verify(v_trace, v_scen, v_dot, ov.tolerance);
    if (*gen_cmd) {
      GenOptions go;
      go.allow_delegated = allow_delegated;
      Scenario s = generate_scenario(g_n, g_rho, g_seed, go);
      s.scheduler.kind = *parse_scheduler(g_sched);
      s.scheduler.rigid = g_rigid;
      if (g_out.empty())
        std::cout << emit_scenario(s);
      else
        save_scenario(s, g_out);
      return 0;
    }
    if (*render_cmd) {
      ExecutionTrace t = load_trace(r_trace);
      std::optional<Pattern> F;
      if (!r_scen.empty()) {
        Scenario s = load_scenario(r_scen);
        F.emplace(s.pattern, s.tol);
      }
      int k = render_trace(t, F ? &*F : nullptr, r_dir);
      std::cout << k << " frames written to " << r_dir << "\n";
      return 0;
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidScenario& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 1;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
