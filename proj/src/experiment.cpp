#include "vklbm/experiment.hpp"

#include "vklbm/csv.hpp"
#include "vklbm/diagnostics.hpp"
#include "vklbm/macrofd.hpp"
#include "vklbm/references.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace vklbm {

namespace {

RelaxationMode relaxation(const ExperimentConfig& cfg, double omega) {
  return cfg.mode == "semi-implicit" ? RelaxationMode::semi_implicit(omega)
                                     : RelaxationMode::explicit_mode(omega);
}

SubcharPolicy subchar_policy(const std::string& s) {
  if (s == "off") return SubcharPolicy::Off;
  if (s == "fail") return SubcharPolicy::Fail;
  return SubcharPolicy::Warn;
}

double problem_lambda(const ExperimentConfig& cfg, const ProblemSetup& p) {
  if (cfg.lambda) return *cfg.lambda;
  if (cfg.lambda_auto) {
    double req = make_model(p).subcharacteristic(0.0, p.u0).required_lambda;
    if (!std::isfinite(req)) throw ConfigError("model.lambda: no finite admissible lambda");
    return std::max(req, 1e-12);
  }
  return p.lambda;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  return os;
}

// Values of u along axis 0 through the centre node of the other axes.
std::vector<double> centre_line(const Grid& g, std::span<const double> u) {
  std::vector<double> line(g.n[0]);
  int j = g.dims > 1 ? (g.n[1] - 1) / 2 : 0;
  int k = g.dims > 2 ? (g.n[2] - 1) / 2 : 0;
  for (int i = 0; i < g.n[0]; ++i) line[i] = u[g.index(i, j, k)];
  return line;
}

std::vector<double> axis_coordinates(const Grid& g) {
  std::vector<double> x(g.n[0]);
  for (int i = 0; i < g.n[0]; ++i) x[i] = g.coordinate(0, i);
  return x;
}

double burgers_l2(const Grid& g, std::span<const double> u, double t) {
  std::vector<double> ref(u.size());
  for (size_t i = 0; i < u.size(); ++i) ref[i] = burgers_moc(g.coordinate(0, static_cast<int>(i)), t);
  return l2_error(u, ref, g.dx);
}

void problem_metrics(const ExperimentConfig& cfg, const ProblemSetup& p, const Solver& s,
                     ExperimentResult& res) {
  const Grid& g = s.grid();
  const auto& u = s.state().u;
  const double t = s.state().t;
  auto& m = res.metrics;
  if (cfg.problem == "burgers-sine") {
    if (t < 1.0 / (2 * std::numbers::pi))
      m["l2_error"] = burgers_l2(g, u, t);
    else
      res.warnings.push_back("no characteristic reference at t = " + format_double(t) + " (past shock time)");
  } else if (cfg.problem == "ly-1d") {
    auto x = axis_coordinates(g);
    auto cross = level_crossings(x, u, 0.5);
    double expected = 0.3 + t;
    m["crossing_expected"] = expected;
    m["crossings"] = static_cast<double>(cross.size());
    if (!cross.empty()) {
      m["crossing"] = cross.front();
      m["crossing_error"] = std::abs(cross.front() - expected);
    }
    double plateau = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
      if (std::abs(x[i] - expected) > 2 * g.dx)
        plateau = std::max(plateau, std::abs(u[i] - p.exact(g.position(i), t)));
    m["plateau_defect"] = plateau;
  } else if (cfg.problem == "ly-2d" || cfg.problem == "ly-3d") {
    auto x = axis_coordinates(g);
    auto line = centre_line(g, u);
    auto cross = level_crossings(x, line, 0.5);
    double r2 = 0.3 - (g.dims - 1) * t * t;
    m["crossings"] = static_cast<double>(cross.size());
    if (r2 > 0) {
      double left = t - std::sqrt(r2), right = t + std::sqrt(r2);
      m["crossing_left_expected"] = left;
      m["crossing_right_expected"] = right;
      if (cross.size() == 2) {
        m["crossing_left"] = cross[0];
        m["crossing_right"] = cross[1];
        m["crossing_error"] = std::max(std::abs(cross[0] - left), std::abs(cross[1] - right));
      }
    }
  } else if (cfg.problem == "embid") {
    auto x = axis_coordinates(g);
    auto cross = level_crossings(x, u, 0.0);
    m["crossings"] = static_cast<double>(cross.size());
    if (!cross.empty()) m["shock"] = cross.front();
    if (cfg.reference) {
      EmbidReference ref = embid_reference(*cfg.mu, cfg.reference_resolution, x);
      m["reference_shock"] = ref.shock;
      m["reference_iterations"] = static_cast<double>(ref.iterations);
      if (!cross.empty()) m["shock_error"] = std::abs(cross.front() - ref.shock);
      double diff = 0.0;
      for (size_t i = 0; i < u.size(); ++i) diff = std::max(diff, std::abs(u[i] - ref.coarse[i]));
      m["reference_max_difference"] = diff;
    }
  } else if (cfg.problem == "spekreijse") {
    double binary = 0.0, off_line = 0.0;
    double a = std::cos(*cfg.theta), b = std::sin(*cfg.theta);
    if (std::abs(a) < 1e-15) a = 0.0;
    if (std::abs(b) < 1e-15) b = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      binary = std::max(binary, std::min(std::abs(u[i]), std::abs(u[i] - 1.0)));
      Point x = g.position(i);
      if (std::abs(b * x[0] - a * x[1]) > 1e-12)
        off_line = std::max(off_line, std::abs(u[i] - p.exact(x, t)));
    }
    m["binary_defect"] = binary;
    m["exact_defect_off_line"] = off_line;
  }
}

}  // namespace

std::string output_directory(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return cfg.output_dir;
}

ProblemSetup build_problem(const ExperimentConfig& cfg, int points) {
  ModelKind kind = parse_model(cfg.model.empty() ? default_model(cfg.problem) : cfg.model);
  ProblemSetup p;
  if (cfg.problem == "burgers-sine") {
    p = burgers_sine_problem(points, kind);
  } else if (cfg.problem == "ly-1d" || cfg.problem == "ly-2d" || cfg.problem == "ly-3d") {
    p = leveque_yee_problem(problem_dims(cfg.problem), points - 1, *cfg.mu);
    if (kind != p.kind) throw ConfigError("model.name: " + cfg.problem + " runs the " +
                                          model_name(p.kind) + " model");
  } else if (cfg.problem == "embid") {
    p = embid_problem(points, *cfg.mu);
    if (kind != p.kind) throw ConfigError("model.name: embid runs the upwind-d1q3 model");
  } else if (cfg.problem == "spekreijse") {
    p = spekreijse_problem(points, *cfg.theta, D2Q9Partition::parse(cfg.partition), kind);
  } else {
    throw ConfigError("unknown problem '" + cfg.problem + "'");
  }
  return p;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write) {
  ProblemSetup p = build_problem(cfg, cfg.points.front());
  SolverOptions opt;
  opt.lambda = problem_lambda(cfg, p);
  opt.adaptive_lambda = cfg.adaptive_lambda;
  opt.subchar = subchar_policy(cfg.subcharacteristic);
  opt.threads = cfg.threads;
  opt.history_capacity = cfg.oracle ? cfg.oracle_window : 0;
  Solver s = make_solver(p, relaxation(cfg, cfg.omega.front()), opt);

  const Grid& g = s.grid();
  const bool periodic = p.bc.periodic(0);
  const double cell = std::pow(g.dx, g.dims);
  DiagnosticsLog log;
  double max_oracle = 0.0;
  long oracle_steps = 0;
  bool oracle_live = cfg.oracle;

  auto record = [&]() {
    const auto& st = s.state();
    double mass = 0.0;
    for (double v : st.u) mass += v;
    auto [lo, hi] = std::minmax_element(st.u.begin(), st.u.end());
    log.add(st.step, st.t, "mass", mass * cell);
    log.add(st.step, st.t, "total_variation", total_variation(st.u, g, periodic));
    log.add(st.step, st.t, "min_u", *lo);
    log.add(st.step, st.t, "max_u", *hi);
  };
  record();

  auto done = [&]() {
    const auto& st = s.state();
    if (cfg.iterations) return st.step >= *cfg.iterations;
    return st.t >= *cfg.final_time - 1e-9 * st.dt;
  };
  while (!done()) {
    s.step();
    record();
    if (oracle_live) {
      const MacroHistory* h = s.history();
      if (!h->window_valid()) {
        oracle_live = false;
        continue;
      }
      auto recon = multistep_reconstruct(*h);
      double d = 0.0;
      for (size_t i = 0; i < recon.size(); ++i) d = std::max(d, std::abs(recon[i] - s.state().u[i]));
      log.add(s.state().step, s.state().t, "oracle_defect", d);
      max_oracle = std::max(max_oracle, d);
      ++oracle_steps;
    }
  }

  ExperimentResult res;
  res.grid = g;
  res.u = s.state().u;
  res.warnings = s.warnings();
  if (cfg.oracle && !oracle_live)
    res.warnings.push_back("oracle window exhausted after " + std::to_string(oracle_steps) +
                           " steps; raise run.oracle_window to check further");
  auto& m = res.metrics;
  const auto& st = s.state();
  m["steps"] = static_cast<double>(st.step);
  m["time"] = st.t;
  m["lambda"] = st.lambda;
  m["dt"] = st.dt;
  m["dx"] = g.dx;
  m["omega_hat"] = s.omega_hat();
  m["nodes"] = static_cast<double>(g.size());
  for (const auto& row : log.rows())
    if (row.step == st.step && row.metric != "oracle_defect") m[row.metric] = row.value;
  if (cfg.oracle) {
    m["oracle_max_defect"] = max_oracle;
    m["oracle_steps"] = static_cast<double>(oracle_steps);
  }
  problem_metrics(cfg, p, s, res);

  if (write) {
    std::filesystem::path dir = output_directory(cfg);
    std::filesystem::create_directories(dir);
    auto field = dir / (cfg.prefix + "_field.csv");
    auto diag = dir / (cfg.prefix + "_diagnostics.csv");
    auto summary = dir / (cfg.prefix + "_summary.txt");
    {
      auto os = open_out(field);
      write_field_csv(os, g, res.u);
    }
    {
      auto os = open_out(diag);
      log.write_csv(os);
    }
    {
      auto os = open_out(summary);
      os << "problem = " << cfg.problem << "\n";
      os << "model = " << model_name(p.kind) << "\n";
      os << "mode = " << cfg.mode << "\n";
      os << "omega = " << format_double(cfg.omega.front()) << "\n";
      for (const auto& [k, v] : m) os << k << " = " << format_double(v) << "\n";
      for (const auto& w : res.warnings) os << "warning = " << w << "\n";
    }
    res.files = {field.string(), diag.string(), summary.string()};
  }
  return res;
}

std::vector<ConvergenceRow> run_convergence_table(const ExperimentConfig& cfg, bool write,
                                                  std::vector<std::string>* files) {
  if (cfg.problem != "burgers-sine")
    throw ConfigError("the convergence study is defined for burgers-sine only");
  std::vector<int> pts = cfg.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<ConvergenceRow> rows(pts.size());
  for (size_t c = 0; c < cfg.omega.size(); ++c) {
    std::vector<NormReport> reports;
    for (size_t r = 0; r < pts.size(); ++r) {
      ExperimentConfig one = cfg;
      one.points = {pts[r]};
      one.omega = {cfg.omega[c]};
      one.oracle = false;
      ExperimentResult res = run_experiment(one, false);
      if (!res.metrics.count("l2_error"))
        throw std::runtime_error("convergence table needs a final time before the shock forms");
      reports.push_back({pts[r], res.metrics.at("dx"), res.metrics.at("l2_error"), std::nullopt});
    }
    fill_orders(reports);
    for (size_t r = 0; r < pts.size(); ++r) {
      rows[r].n = reports[r].n;
      rows[r].dx = reports[r].dx;
      rows[r].l2.push_back(reports[r].l2);
      rows[r].order.push_back(reports[r].order);
    }
  }
  if (write) {
    std::filesystem::path dir = output_directory(cfg);
    std::filesystem::create_directories(dir);
    auto path = dir / (cfg.prefix + "_convergence.csv");
    auto os = open_out(path);
    os << "N,dx";
    for (double w : cfg.omega)
      os << ",L2(omega=" << format_double(w) << "),order(omega=" << format_double(w) << ")";
    os << "\n";
    for (const auto& row : rows) {
      os << row.n << "," << format_double(row.dx);
      for (size_t c = 0; c < row.l2.size(); ++c) {
        os << "," << format_double(row.l2[c]) << ",";
        if (row.order[c]) os << format_double(*row.order[c]);
      }
      os << "\n";
    }
    if (files) files->push_back(path.string());
  }
  return rows;
}

std::vector<CheckFailure> check_metrics(const std::map<std::string, double>& metrics,
                                        const std::string& expected_path) {
  std::ifstream in(expected_path);
  if (!in) throw ConfigError("cannot open expected-values file '" + expected_path + "'");
  std::vector<CheckFailure> fails;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string name, value, tol, extra;
    if (!(ls >> name)) continue;
    if (!(ls >> value >> tol) || (ls >> extra))
      throw ConfigError(expected_path + ":" + std::to_string(lineno) +
                        ": expected `metric value tolerance`");
    CheckFailure c{name, parse_double(value), parse_double(tol), std::nullopt};
    auto it = metrics.find(name);
    if (it != metrics.end()) c.actual = it->second;
    if (!c.actual || !(std::abs(*c.actual - c.expected) <= c.tolerance)) fails.push_back(c);
  }
  return fails;
}

}  // namespace vklbm
