#pragma once

#include "vklbm/config.hpp"
#include "vklbm/problems.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vklbm {

// Environment variable that replaces [output] directory when set.
inline constexpr const char* kOutputDirEnv = "VKLBM_OUTPUT_DIR";

struct ExperimentResult {
  std::map<std::string, double> metrics;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  std::vector<double> u;  // final field
  Grid grid;
};

ProblemSetup build_problem(const ExperimentConfig& cfg, int points);

// One run with the first omega and grid size. Writes <prefix>_field.csv,
// <prefix>_diagnostics.csv and <prefix>_summary.txt.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write = true);

struct ConvergenceRow {
  int n = 0;
  double dx = 0.0;
  std::vector<double> l2;  // per omega
  std::vector<std::optional<double>> order;
};

// burgers-sine over every omega and grid size; writes <prefix>_convergence.csv
// with columns N, dx, then L2 and order for each omega.
std::vector<ConvergenceRow> run_convergence_table(const ExperimentConfig& cfg, bool write = true,
                                                  std::vector<std::string>* files = nullptr);

struct CheckFailure {
  std::string metric;
  double expected = 0.0;
  double tolerance = 0.0;
  std::optional<double> actual;
};

// Expected-values file: one `metric value tolerance` per line, '#' comments.
std::vector<CheckFailure> check_metrics(const std::map<std::string, double>& metrics,
                                        const std::string& expected_path);

std::string output_directory(const ExperimentConfig& cfg);

}  // namespace vklbm
