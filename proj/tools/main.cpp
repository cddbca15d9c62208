// Command line front end: runs flows from JSON configs, executes the
// verification suites, and exports the built-in fixtures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "glmcf/config.hpp"
#include "glmcf/csv.hpp"
#include "glmcf/diagnostics.hpp"
#include "glmcf/fixtures.hpp"

namespace fs = std::filesystem;
using namespace glmcf;

namespace {

int cmd_flow(const std::string& config_path, const std::string& out_override,
             bool expect_completion) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_override.empty()) cfg.output.directory = out_override;

  const fs::path dir = cfg.output.directory;
  fs::create_directories(dir);

  FlowObserver observer;
  if (cfg.output.snapshots) {
    observer = [&](const FlowState& s, double, int step) {
      write_snapshot(dir / ("snap_" + std::to_string(step) + ".csv"), s, cfg.ambient,
                     cfg.flow.tol);
    };
  }

  auto [final_state, trace] = run_flow(cfg.initial, cfg.ambient, cfg.flow, observer);

  if (cfg.output.trace) write_trace(dir / "trace.csv", trace);

  std::ostringstream summary;
  summary << "termination=" << to_string(trace.termination) << "\n";
  if (!trace.message.empty()) summary << "message=" << trace.message << "\n";
  summary << "steps=" << trace.steps << "\n";
  summary << "t_final=" << g17(trace.t_final) << "\n";
  if (!trace.rows.empty()) {
    const TraceRow& last = trace.rows.back();
    summary << "vol_bar=" << g17(last.vol_bar) << "\n";
    summary << "vol_tilde=" << g17(last.vol_tilde) << "\n";
    summary << "vol_hat=" << g17(last.vol_hat) << "\n";
    summary << "max_omega_sq=" << g17(last.max_omega_sq) << "\n";
    summary << "max_K=" << g17(last.max_k) << "\n";
  }
  summary << "max_abs_omega_over_run=" << g17(trace.max_abs_omega) << "\n";
  summary << "vol_tilde_monotone=" << (trace.vol_tilde_monotone ? "true" : "false") << "\n";
  if (const auto* g = std::get_if<GraphState>(&final_state)) {
    double mu = 0.0;
    for (int j = 0; j < g->grid.num_nodes(); ++j)
      mu = std::max(mu, std::abs(g->u_total(j)));
    summary << "final_max_abs_u=" << g17(mu) << "\n";
  }
  atomic_write_file(dir / "summary.txt", summary.str());

  std::cout << summary.str();
  if (expect_completion && trace.termination != Termination::ReachedTEnd) return 1;
  return 0;
}

int cmd_verify(const std::string& suite_name, const std::vector<int>& ladder,
               const std::string& out_dir) {
  const auto suite = suite_from_string(suite_name);
  if (!suite) {
    std::cerr << "unknown suite '" << suite_name << "'\n";
    return 2;
  }
  DiagnosticsReport report;
  try {
    report = run_suite(*suite, ladder);
  } catch (const std::invalid_argument& e) {
    std::cerr << "ladder error: " << e.what() << "\n";
    return 2;
  }
  write_report(fs::path(out_dir) / "report.csv", report);
  std::cout << format_report(report);
  return report.all_ok() ? 0 : 1;
}

int cmd_fixtures(const std::string& name, const std::string& out_dir) {
  const auto f = fixture_from_string(name);
  if (!f) {
    std::cerr << "unknown fixture '" << name << "'\n";
    return 2;
  }
  const int ambient_n = (name == "circle" || name == "line" || name == "sine_graph_1d") ? 1 : 2;
  const FlowState state = make_fixture(*f, default_fixture_resolution(*f));
  write_snapshot(fs::path(out_dir) / (name + ".csv"), state,
                 AmbientStructure::flat(ambient_n));
  std::cout << "wrote " << (fs::path(out_dir) / (name + ".csv")).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Lagrangian mean curvature flow: simulator and verifier"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  bool expect_completion = false;
  auto* flow = app.add_subcommand("flow", "run a flow described by a JSON config");
  flow->add_option("config", config_path, "path to the run config")->required();
  flow->add_option("--out", out_override, "override the output directory");
  flow->add_flag("--expect-completion", expect_completion,
                 "exit 1 unless the run reaches t_end");

  std::string suite_name = "all", verify_out = ".";
  std::vector<int> ladder{32, 64};
  auto* verify = app.add_subcommand("verify", "run a diagnostics suite");
  verify->add_option("--suite", suite_name, "identities | flows | preservation | all")
      ->required();
  verify->add_option("--ladder", ladder, "resolution ladder, e.g. 32,64")->delimiter(',');
  verify->add_option("--out", verify_out, "directory for report.csv");

  std::string fixture_name, fixture_out;
  auto* fixtures = app.add_subcommand("fixtures", "export a built-in initial state as CSV");
  fixtures->add_option("name", fixture_name, "fixture name")->required();
  fixtures->add_option("--out", fixture_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (flow->parsed()) return cmd_flow(config_path, out_override, expect_completion);
    if (verify->parsed()) return cmd_verify(suite_name, ladder, verify_out);
    if (fixtures->parsed()) return cmd_fixtures(fixture_name, fixture_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
