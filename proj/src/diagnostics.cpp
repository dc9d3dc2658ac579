#include "vklbm/diagnostics.hpp"

#include "vklbm/csv.hpp"
#include "vklbm/flux.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace vklbm {

double total_variation(std::span<const double> field, bool periodic) {
  double tv = 0.0;
  for (size_t i = 0; i + 1 < field.size(); ++i) tv += std::abs(field[i + 1] - field[i]);
  if (periodic && field.size() > 1) tv += std::abs(field.front() - field.back());
  return tv;
}

std::array<double, 3> total_variation_axes(std::span<const double> field, const Grid& grid,
                                           bool periodic) {
  if (field.size() != grid.size()) throw ConfigError("field size does not match grid");
  std::array<double, 3> tv{0.0, 0.0, 0.0};
  std::vector<double> line;
  for (int a = 0; a < grid.dims; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    for (int jc = 0; jc < grid.n[c]; ++jc) {
      for (int jb = 0; jb < grid.n[b]; ++jb) {
        line.clear();
        for (int i = 0; i < grid.n[a]; ++i) {
          std::array<int, 3> idx{};
          idx[a] = i;
          idx[b] = jb;
          idx[c] = jc;
          line.push_back(field[grid.index(idx[0], idx[1], idx[2])]);
        }
        tv[a] += total_variation(line, periodic);
      }
    }
  }
  return tv;
}

double total_variation(std::span<const double> field, const Grid& grid, bool periodic) {
  auto tv = total_variation_axes(field, grid, periodic);
  return tv[0] + tv[1] + tv[2];
}

double l2_error(std::span<const double> numeric, std::span<const double> reference, double dx) {
  if (numeric.size() != reference.size())
    throw ConfigError("l2_error: fields have different sizes");
  double s = 0.0;
  for (size_t i = 0; i < numeric.size(); ++i) {
    double e = numeric[i] - reference[i];
    s += e * e;
  }
  return dx * std::sqrt(s);
}

std::vector<double> convergence_order(const std::vector<NormReport>& reports) {
  if (reports.size() < 2) throw ConfigError("convergence order needs two resolutions");
  std::vector<double> out;
  for (size_t i = 1; i < reports.size(); ++i) {
    const auto& c = reports[i - 1];
    const auto& f = reports[i];
    if (!(f.dx < c.dx)) throw ConfigError("convergence order: spacing must decrease");
    out.push_back(std::log(c.l2 / f.l2) / std::log(c.dx / f.dx));
  }
  return out;
}

void fill_orders(std::vector<NormReport>& reports) {
  if (reports.size() < 2) return;
  auto o = convergence_order(reports);
  reports[0].order.reset();
  for (size_t i = 1; i < reports.size(); ++i) reports[i].order = o[i - 1];
}

double h_square(double f) { return f * f; }
double h_abs(double f) { return std::abs(f); }

HReport h_monitor(std::span<const double> f, std::span<const double> feq,
                  std::span<const double> fstar, double omega_hat, const ConvexFn& h) {
  HReport rep;
  for (size_t i = 0; i < f.size(); ++i) {
    double bound = (1.0 - omega_hat) * h(f[i]) + omega_hat * h(feq[i]);
    double excess = h(fstar[i]) - bound;
    if (excess > 0.0) {
      ++rep.violations;
      if (excess > rep.max_violation) {
        rep.max_violation = excess;
        rep.worst_index = i;
      }
    }
  }
  return rep;
}

PositivityReport positivity_scan(std::span<const double> u, double floor) {
  PositivityReport rep;
  rep.min = u.empty() ? 0.0 : u[0];
  for (size_t i = 0; i < u.size(); ++i) {
    rep.min = std::min(rep.min, u[i]);
    if (u[i] < floor && !rep.first_violation) rep.first_violation = i;
  }
  rep.passed = !rep.first_violation.has_value();
  return rep;
}

void DiagnosticsLog::add(long step, double time, std::string metric, double value) {
  rows_.push_back({step, time, std::move(metric), value});
}

void DiagnosticsLog::write_csv(std::ostream& os) const {
  os << "step,time,metric,value\n";
  for (const auto& r : rows_)
    os << r.step << "," << format_double(r.time) << "," << r.metric << ","
       << format_double(r.value) << "\n";
}

}  // namespace vklbm
