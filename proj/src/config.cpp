#include "vklbm/config.hpp"

#include "vklbm/csv.hpp"
#include "vklbm/flux.hpp"
#include "vklbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace vklbm {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v) {
  std::string t = trim(v);
  if (t == "pi") return std::numbers::pi;
  if (t.rfind("pi/", 0) == 0) return std::numbers::pi / parse_double(t.substr(3));
  return parse_double(t);
}

long parse_integer(const std::string& v) {
  double d = parse_double(trim(v));
  if (d != std::floor(d) || std::abs(d) > 1e15) throw ConfigError("not an integer: '" + v + "'");
  return static_cast<long>(d);
}

bool parse_bool(const std::string& v) {
  std::string t = trim(v);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError("not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"problem", {"name", "mu", "theta", "partition"}},
      {"model", {"name", "lambda", "adaptive_lambda", "subcharacteristic"}},
      {"relaxation", {"mode", "omega"}},
      {"grid", {"points", "cells"}},
      {"run", {"final_time", "iterations", "oracle", "oracle_window", "threads"}},
      {"reference", {"enabled", "resolution"}},
      {"output", {"directory", "prefix"}},
      {"check", {"expected"}},
  };
  return s;
}

}  // namespace

int problem_dims(const std::string& problem) {
  if (problem == "burgers-sine" || problem == "ly-1d" || problem == "embid") return 1;
  if (problem == "ly-2d" || problem == "spekreijse") return 2;
  if (problem == "ly-3d") return 3;
  throw ConfigError("unknown problem '" + problem + "'");
}

std::string default_model(const std::string& problem) {
  if (problem == "ly-2d") return "upwind-d2q5";
  if (problem == "ly-3d") return "upwind-d3q7";
  if (problem == "spekreijse") return "d2q9";
  return "upwind-d1q3";
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  cfg.source_path = origin;
  std::vector<std::string> errors;
  std::set<std::string> seen;
  std::vector<int> cells;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto err = [&](int ln, const std::string& msg) {
    errors.push_back(origin + ":" + std::to_string(ln) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        err(lineno, "malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) err(lineno, "unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      err(lineno, "expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (section.empty()) {
      err(lineno, "key '" + key + "' outside a section");
      continue;
    }
    auto sec = schema().find(section);
    if (sec == schema().end()) continue;
    if (!sec->second.count(key)) {
      err(lineno, "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    std::string full = section + "." + key;
    if (!seen.insert(full).second) {
      err(lineno, "duplicate key " + full);
      continue;
    }
    try {
      if (full == "problem.name") cfg.problem = val;
      else if (full == "problem.mu") cfg.mu = parse_real(val);
      else if (full == "problem.theta") cfg.theta = parse_real(val);
      else if (full == "problem.partition") {
        D2Q9Partition::parse(val);
        cfg.partition = val;
      } else if (full == "model.name") cfg.model = val;
      else if (full == "model.lambda") {
        if (val == "auto") cfg.lambda_auto = true;
        else cfg.lambda = parse_real(val);
      } else if (full == "model.adaptive_lambda") cfg.adaptive_lambda = parse_bool(val);
      else if (full == "model.subcharacteristic") {
        if (val != "off" && val != "warn" && val != "fail")
          throw ConfigError("subcharacteristic must be off, warn or fail");
        cfg.subcharacteristic = val;
      } else if (full == "relaxation.mode") {
        if (val != "explicit" && val != "semi-implicit")
          throw ConfigError("mode must be explicit or semi-implicit");
        cfg.mode = val;
      } else if (full == "relaxation.omega") {
        cfg.omega.clear();
        for (const auto& item : split_list(val)) cfg.omega.push_back(parse_real(item));
      } else if (full == "grid.points") {
        for (const auto& item : split_list(val))
          cfg.points.push_back(static_cast<int>(parse_integer(item)));
      } else if (full == "grid.cells") {
        for (const auto& item : split_list(val))
          cells.push_back(static_cast<int>(parse_integer(item)));
      } else if (full == "run.final_time") cfg.final_time = parse_real(val);
      else if (full == "run.iterations") cfg.iterations = parse_integer(val);
      else if (full == "run.oracle") cfg.oracle = parse_bool(val);
      else if (full == "run.oracle_window") {
        long w = parse_integer(val);
        if (w < 1) throw ConfigError("oracle_window must be positive");
        cfg.oracle_window = static_cast<size_t>(w);
      } else if (full == "run.threads") {
        long t = parse_integer(val);
        if (t < 1) throw ConfigError("threads must be at least 1");
        cfg.threads = static_cast<size_t>(t);
      } else if (full == "reference.enabled") cfg.reference = parse_bool(val);
      else if (full == "reference.resolution")
        cfg.reference_resolution = static_cast<int>(parse_integer(val));
      else if (full == "output.directory") cfg.output_dir = val;
      else if (full == "output.prefix") cfg.prefix = val;
      else if (full == "check.expected") cfg.expected = val;
    } catch (const ConfigError& e) {
      err(lineno, full + ": " + e.what());
    }
  }

  auto verr = [&](const std::string& msg) { errors.push_back(origin + ": " + msg); };
  int dims = 0;
  if (cfg.problem.empty()) {
    verr("problem.name is required");
  } else {
    try {
      dims = problem_dims(cfg.problem);
    } catch (const ConfigError& e) {
      verr(std::string("problem.name: ") + e.what());
    }
  }
  if (dims > 0) {
    if (cfg.model.empty()) cfg.model = default_model(cfg.problem);
    try {
      ModelKind k = parse_model(cfg.model);
      if (model_dims(k) != dims)
        verr("model.name: " + cfg.model + " is " + std::to_string(model_dims(k)) +
             "-dimensional but " + cfg.problem + " is " + std::to_string(dims) + "-dimensional");
      else if (cfg.problem == "spekreijse" && k != ModelKind::D2Q9 && k != ModelKind::UpwindD2Q5)
        verr("model.name: spekreijse requires d2q9 or upwind-d2q5");
    } catch (const ConfigError& e) {
      verr(std::string("model.name: ") + e.what());
    }
    bool needs_mu = cfg.problem.rfind("ly-", 0) == 0 || cfg.problem == "embid";
    if (needs_mu && !cfg.mu) verr("problem.mu is required for " + cfg.problem);
    if (!needs_mu && cfg.mu) verr("problem.mu is not used by " + cfg.problem);
    if (cfg.problem == "spekreijse" && !cfg.theta) verr("problem.theta is required for spekreijse");
    if (cfg.problem != "spekreijse" && cfg.theta) verr("problem.theta is only used by spekreijse");

    if (!cells.empty() && !cfg.points.empty()) verr("grid: give either points or cells");
    for (int c : cells) cfg.points.push_back(c + 1);
    if (cfg.points.empty()) {
      if (cfg.problem == "burgers-sine") cfg.points = {41};
      else if (cfg.problem == "ly-1d") cfg.points = {51};
      else if (cfg.problem == "ly-2d" || cfg.problem == "ly-3d") cfg.points = {101};
      else if (cfg.problem == "embid") cfg.points = {100};
      else cfg.points = {50};
    }
    for (int p : cfg.points)
      if (p < 5) verr("grid.points: need at least 5 points, got " + std::to_string(p));

    if (cfg.final_time && cfg.iterations) verr("run: give either final_time or iterations");
    if (!cfg.final_time && !cfg.iterations) {
      if (cfg.problem == "burgers-sine") cfg.final_time = 0.1 / (2 * std::numbers::pi);
      else if (cfg.problem == "ly-1d") cfg.final_time = 0.3;
      else if (cfg.problem == "ly-2d" || cfg.problem == "ly-3d") cfg.final_time = 0.1;
      else if (cfg.problem == "embid") cfg.iterations = 500;
      else cfg.iterations = 1000;
    }
    if (cfg.final_time && !(*cfg.final_time > 0)) verr("run.final_time must be positive");
    if (cfg.iterations && *cfg.iterations < 0) verr("run.iterations must be non-negative");
  }
  if (cfg.omega.empty()) verr("relaxation.omega: empty list");
  for (double w : cfg.omega) {
    if (!(w > 0)) verr("relaxation.omega must be positive");
    else if (cfg.mode == "explicit" && !(w < 2))
      verr("relaxation.omega must be below 2 in explicit mode");
  }
  if (cfg.lambda && !(*cfg.lambda > 0)) verr("model.lambda must be positive");
  if (cfg.oracle && !cfg.problem.empty() && cfg.problem != "burgers-sine")
    verr("run.oracle: the oracle needs periodic data without a source (burgers-sine)");
  if (cfg.reference && cfg.problem != "embid") verr("reference: only available for embid");
  if (cfg.reference_resolution < 10) verr("reference.resolution too small");
  if (cfg.prefix.empty()) cfg.prefix = cfg.problem;

  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ConfigError(msg);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace vklbm
