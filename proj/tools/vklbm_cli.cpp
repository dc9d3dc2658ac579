#include "vklbm/experiment.hpp"

#include "vklbm/csv.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { kOk = 0, kConfig = 1, kSolver = 2, kCheck = 3 };

void print_result(const vklbm::ExperimentResult& r) {
  for (const auto& [k, v] : r.metrics) std::cout << k << " = " << vklbm::format_double(v) << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& f : r.files) std::cout << "wrote " << f << "\n";
}

int run(const std::string& path, size_t threads, bool check, const std::string& expected) {
  vklbm::ExperimentConfig cfg = vklbm::parse_config(path);
  if (threads > 0) cfg.threads = threads;
  if (!expected.empty()) cfg.expected = expected;
  if (cfg.omega.size() > 1 || cfg.points.size() > 1)
    throw vklbm::ConfigError(path + ": several omega or grid values given; use `table`");
  if (check && cfg.expected.empty())
    throw vklbm::ConfigError(path + ": check.expected is required for `check`");
  auto res = vklbm::run_experiment(cfg);
  print_result(res);
  if (!check) return kOk;
  auto fails = vklbm::check_metrics(res.metrics, cfg.expected);
  for (const auto& f : fails) {
    std::cerr << "check failed: " << f.metric << " expected " << vklbm::format_double(f.expected)
              << " +- " << vklbm::format_double(f.tolerance) << ", got "
              << (f.actual ? vklbm::format_double(*f.actual) : std::string("(missing)")) << "\n";
  }
  std::cout << (fails.empty() ? "check passed" : "check FAILED") << "\n";
  return fails.empty() ? kOk : kCheck;
}

int table(const std::string& path, size_t threads) {
  vklbm::ExperimentConfig cfg = vklbm::parse_config(path);
  if (threads > 0) cfg.threads = threads;
  std::vector<std::string> files;
  auto rows = vklbm::run_convergence_table(cfg, true, &files);
  std::cout << "N dx";
  for (double w : cfg.omega) std::cout << " L2(" << w << ") order(" << w << ")";
  std::cout << "\n";
  for (const auto& r : rows) {
    std::cout << r.n << " " << r.dx;
    for (size_t c = 0; c < r.l2.size(); ++c) {
      std::cout << " " << r.l2[c] << " ";
      if (r.order[c]) std::cout << *r.order[c];
      else std::cout << "-";
    }
    std::cout << "\n";
  }
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-kinetic lattice Boltzmann benchmark runner"};
  app.require_subcommand(1);
  size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides run.threads)")
      ->check(CLI::PositiveNumber);

  std::string path, expected;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_cmd->add_option("config", path, "Configuration file")->required();
  auto* check_cmd = app.add_subcommand("check", "Run and compare against expected values");
  check_cmd->add_option("config", path, "Configuration file")->required();
  check_cmd->add_option("--expected", expected, "Expected-values file (overrides check.expected)");
  auto* table_cmd = app.add_subcommand("table", "Convergence study over omega and grid sizes");
  table_cmd->add_option("config", path, "Configuration file")->required();
  for (auto* c : {run_cmd, check_cmd, table_cmd})
    c->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return run(path, threads, false, "");
    if (*check_cmd) return run(path, threads, true, expected);
    return table(path, threads);
  } catch (const vklbm::ConfigError& e) {
    std::cerr << "configuration error:\n" << e.what() << "\n";
    return kConfig;
  } catch (const vklbm::SolverError& e) {
    std::cerr << "solver failure at step " << e.step() << ", node " << e.node() << ": "
              << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kSolver;
  }
}
