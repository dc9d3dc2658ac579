#pragma once

#include "vklbm/grid.hpp"

#include <span>
#include <vector>

namespace vklbm {

// Solution of u = sin(2 pi (x - u t)) before the shock time 1/(2 pi).
double burgers_moc(double x, double t, double tol = 1e-15);

// Indicator of the advected step (1D: x - t <= 0.3) or of the disc/ball
// sum_d (x_d - t)^2 <= 0.3.
double leveque_yee_exact(const Point& x, double t, int dims);
double leveque_yee_exact(double x, double t);

// 1 where sin(theta) x1 - cos(theta) x2 < 0, else 0. Points within 1e-12 of
// the line count as on it.
double spekreijse_exact(double x1, double x2, double theta);

struct EmbidReference {
  std::vector<double> x;  // fine grid
  std::vector<double> u;
  std::vector<double> coarse;  // linear interpolation onto the requested points
  double shock = 0.0;          // first downward zero crossing on the fine grid
  long iterations = 0;
  double residual = 0.0;
};

// Steady state of the relaxation-factor-1 upwind scheme on a fine grid.
EmbidReference embid_reference(double mu, int resolution, std::span<const double> coarse_x,
                               double tol = 1e-12, long max_iterations = 5'000'000);

// Positions where the linear interpolant of u crosses `level`.
std::vector<double> level_crossings(std::span<const double> x, std::span<const double> u,
                                    double level);

}  // namespace vklbm
