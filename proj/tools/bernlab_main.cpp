// bernlab: exterior anisotropic Bernoulli free boundary laboratory.
//   solve   compute the minimal supersolution described by a config file
//   verify  run the lemma verification suite
//   plot    render a solution bundle as SVG

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bernlab/config.hpp"
#include "bernlab/io.hpp"
#include "bernlab/lemma_lab.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bernlab;

int cmd_solve(const std::string& config_path, const std::string& out_override) {
  const ExperimentConfig cfg = parse_experiment_config(read_text_file(config_path));
  const fs::path out = out_override.empty() ? cfg.out_dir : fs::path(out_override);

  if (cfg.q.continuous()) {
    const auto sol = solve_minimal(cfg.K, cfg.q, cfg.params);
    write_solution_bundle(out, sol, cfg.K);
    std::cout << "solve: " << (sol.converged ? "converged" : "max_iter exceeded") << " after "
              << sol.iterations << " iterations, residual " << sol.residual_max_rel
              << ", bundle at " << out.string() << "\n";
    return sol.converged ? 0 : 2;
  }

  const auto [stages, limit] = solve_minimal_usc(cfg.K, cfg.q, cfg.j_schedule, cfg.params);
  bool all_converged = limit.converged;
  for (size_t i = 0; i < stages.size(); ++i) {
    char label[64];
    std::snprintf(label, sizeof(label), "stage_%02zu_j%g", i + 1, cfg.j_schedule[i]);
    write_solution_bundle(out / label, stages[i], cfg.K);
    all_converged = all_converged && stages[i].converged;
  }
  write_solution_bundle(out / "limit", limit, cfg.K);
  // parent-level plot with the stage sequence overlaid
  write_text_file(out / "boundary.csv", to_csv(limit.boundary));
  write_text_file(out / "k.csv", to_csv(cfg.K));
  write_text_file(out / "plot.svg", plot_bundle(out));
  std::cout << "solve: " << stages.size() << " stages + limit, "
            << (all_converged ? "all converged" : "max_iter exceeded") << ", bundles at "
            << out.string() << "\n";
  return all_converged ? 0 : 2;
}

int cmd_verify(const std::string& suite_path, const std::string& only, int jobs,
               const std::string& out_override) {
  SuiteConfig cfg;
  if (!suite_path.empty()) cfg = parse_suite_config(read_text_file(suite_path));
  if (jobs > 0) cfg.jobs = jobs;
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (!only.empty()) {
    bool known = false;
    for (const auto& k : default_check_names()) known = known || k == only;
    if (!known) throw ConfigInvalid("unknown check name: " + only);
    cfg.checks = {only};
  }
  const auto reports = run_all(cfg);
  std::cout << summary_table(reports);
  return all_passed(reports) ? 0 : 1;
}

int cmd_plot(const std::string& bundle_dir, const std::string& out_file) {
  if (!fs::exists(bundle_dir)) throw BundleMissing("bundle directory not found: " + bundle_dir);
  const std::string svg = plot_bundle(bundle_dir);
  const fs::path out = out_file.empty() ? fs::path(bundle_dir) / "plot.svg" : fs::path(out_file);
  write_text_file(out, svg);
  std::cout << "plot written to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bernlab: exterior anisotropic Bernoulli free boundary laboratory"};
  app.require_subcommand(1);

  std::string config_path, suite_path, bundle_dir, out_path, only;
  int jobs = 0;

  auto* solve = app.add_subcommand("solve", "compute a minimal supersolution from a config file");
  solve->add_option("--config", config_path, "experiment config (JSON)")->required();
  solve->add_option("--out", out_path, "output bundle directory (overrides the config)");

  auto* verify = app.add_subcommand("verify", "run the lemma verification suite");
  verify->add_option("--suite", suite_path, "suite config (JSON); default: all checks");
  verify->add_option("--only", only, "run a single named check");
  verify->add_option("--jobs", jobs, "number of concurrent checks (default 1)");
  verify->add_option("--out", out_path, "artifacts directory");

  auto* plot = app.add_subcommand("plot", "render a solution bundle as SVG");
  plot->add_option("--bundle", bundle_dir, "bundle directory from a previous solve")->required();
  plot->add_option("--out", out_path, "output SVG path (default <bundle>/plot.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage errors map to exit 1; --help keeps exit 0
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_path);
    if (verify->parsed()) return cmd_verify(suite_path, only, jobs, out_path);
    if (plot->parsed()) return cmd_plot(bundle_dir, out_path);
  } catch (const bernlab::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const bernlab::BundleMissing& e) {
    std::cerr << "bundle error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
