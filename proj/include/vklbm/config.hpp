#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vklbm {

// Line-oriented `key = value` text with [section] headers. '#' starts a
// comment. Unknown sections or keys are rejected.
//
//   [problem]    name, mu, theta, partition
//   [model]      name, lambda (number or auto), adaptive_lambda, subcharacteristic
//   [relaxation] mode (explicit | semi-implicit), omega (comma list)
//   [grid]       points (comma list), cells (comma list)
//   [run]        final_time, iterations, oracle, oracle_window, threads
//   [reference]  enabled, resolution
//   [output]     directory, prefix
//   [check]      expected
struct ExperimentConfig {
  std::string problem;
  std::string model;
  std::optional<double> mu;
  std::optional<double> theta;
  std::string partition = "coordinate";

  std::optional<double> lambda;  // empty: problem default
  bool lambda_auto = false;
  bool adaptive_lambda = false;
  std::string subcharacteristic = "warn";

  std::string mode = "explicit";
  std::vector<double> omega{1.0};

  std::vector<int> points;  // grid points per axis

  std::optional<double> final_time;
  std::optional<long> iterations;
  bool oracle = false;
  size_t oracle_window = 64;
  size_t threads = 1;

  bool reference = false;
  int reference_resolution = 4001;

  std::string output_dir = "output";
  std::string prefix;
  std::string expected;

  std::string source_path;
};

int problem_dims(const std::string& problem);
std::string default_model(const std::string& problem);

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

}  // namespace vklbm
