#pragma once

#include "vklbm/grid.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vklbm {

// sum_i |u_{i+1} - u_i|, closing the loop when periodic.
double total_variation(std::span<const double> field, bool periodic = false);
// Per-axis sums of line variations.
std::array<double, 3> total_variation_axes(std::span<const double> field, const Grid& grid,
                                           bool periodic);
double total_variation(std::span<const double> field, const Grid& grid, bool periodic);

struct NormReport {
  int n = 0;  // grid points
  double dx = 0.0;
  double l2 = 0.0;
  std::optional<double> order;  // against the previous, coarser report
};

// dx * sqrt(sum_i e_i^2)
double l2_error(std::span<const double> numeric, std::span<const double> reference, double dx);

// Pairwise log(e_c/e_f)/log(dx_c/dx_f); dx must strictly decrease.
std::vector<double> convergence_order(const std::vector<NormReport>& reports);
void fill_orders(std::vector<NormReport>& reports);

using ConvexFn = std::function<double(double)>;
double h_square(double f);
double h_abs(double f);

struct HReport {
  double max_violation = 0.0;  // max of H(f*) - (1-w)H(f) - wH(feq), floored at 0
  size_t violations = 0;       // entries with a positive excess
  size_t worst_index = 0;
};

HReport h_monitor(std::span<const double> f, std::span<const double> feq,
                  std::span<const double> fstar, double omega_hat, const ConvexFn& h);

struct PositivityReport {
  double min = 0.0;
  std::optional<size_t> first_violation;
  bool passed = true;
};

// Flags entries below `floor`.
PositivityReport positivity_scan(std::span<const double> u, double floor = 0.0);

struct DiagnosticRow {
  long step = 0;
  double time = 0.0;
  std::string metric;
  double value = 0.0;
};

class DiagnosticsLog {
 public:
  void add(long step, double time, std::string metric, double value);
  const std::vector<DiagnosticRow>& rows() const { return rows_; }
  void write_csv(std::ostream& os) const;

 private:
  std::vector<DiagnosticRow> rows_;
};

}  // namespace vklbm
