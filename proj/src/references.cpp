#include "vklbm/references.hpp"

#include "vklbm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vklbm {

double burgers_moc(double x, double t, double tol) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (t < 0.0 || t >= 1.0 / two_pi)
    throw DomainError("characteristics cross for t >= 1/(2 pi)");
  if (t == 0.0) return std::sin(two_pi * x);
  auto F = [&](double u) { return u - std::sin(two_pi * (x - u * t)); };
  double lo = -1.0, hi = 1.0;
  double u = std::sin(two_pi * x);
  for (int it = 0; it < 200; ++it) {
    double r = F(u);
    if (std::abs(r) <= tol) return u;
    if (r < 0.0) lo = u;
    else hi = u;
    double d = 1.0 + two_pi * t * std::cos(two_pi * (x - u * t));
    double next = u - r / d;
    if (!(next > lo && next < hi)) next = lo + (hi - lo) / 2;
    if (next == u) break;
    u = next;
  }
  if (std::abs(F(u)) <= tol) return u;
  throw DomainError("characteristic solve did not reach the tolerance");
}

double leveque_yee_exact(const Point& x, double t, int dims) {
  if (dims == 1) return leveque_yee_exact(x[0], t);
  double r2 = 0.0;
  for (int d = 0; d < dims; ++d) r2 += (x[d] - t) * (x[d] - t);
  return r2 <= 0.3 ? 1.0 : 0.0;
}

double leveque_yee_exact(double x, double t) { return x - t <= 0.3 ? 1.0 : 0.0; }

double spekreijse_exact(double x1, double x2, double theta) {
  double a = std::cos(theta);
  double b = std::sin(theta);
  if (std::abs(a) < 1e-15) a = 0.0;
  if (std::abs(b) < 1e-15) b = 0.0;
  return b * x1 - a * x2 < -1e-12 ? 1.0 : 0.0;
}

std::vector<double> level_crossings(std::span<const double> x, std::span<const double> u,
                                    double level) {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < u.size(); ++i) {
    bool a = u[i] >= level;
    bool b = u[i + 1] >= level;
    if (a == b) continue;
    double s = (level - u[i]) / (u[i + 1] - u[i]);
    out.push_back(x[i] + s * (x[i + 1] - x[i]));
  }
  return out;
}

EmbidReference embid_reference(double mu, int resolution, std::span<const double> coarse_x,
                               double tol, long max_iterations) {
  ProblemSetup p = embid_problem(resolution, mu);
  SolverOptions opt;
  opt.lambda = p.lambda;
  opt.subchar = SubcharPolicy::Off;
  Solver s = make_solver(p, RelaxationMode::explicit_mode(1.0), opt);
  EmbidReference ref;
  std::vector<double> prev;
  for (long it = 0; it < max_iterations; ++it) {
    prev = s.state().u;
    s.step();
    double r = 0.0;
    for (size_t i = 0; i < prev.size(); ++i) r = std::max(r, std::abs(s.state().u[i] - prev[i]));
    ref.iterations = it + 1;
    ref.residual = r;
    if (r <= tol) break;
  }
  if (ref.residual > tol) throw DomainError("fine-grid steady solve did not converge");
  ref.u = s.state().u;
  ref.x.resize(ref.u.size());
  for (size_t i = 0; i < ref.x.size(); ++i) ref.x[i] = p.grid.coordinate(0, static_cast<int>(i));
  const double dx = p.grid.dx;
  const size_t n = ref.u.size();
  for (double xc : coarse_x) {
    double pos = std::clamp(xc / dx, 0.0, static_cast<double>(n - 1));
    size_t i = std::min(static_cast<size_t>(pos), n - 2);
    double w = pos - static_cast<double>(i);
    ref.coarse.push_back((1.0 - w) * ref.u[i] + w * ref.u[i + 1]);
  }
  auto cross = level_crossings(ref.x, ref.u, 0.0);
  ref.shock = cross.empty() ? std::nan("") : cross.front();
  return ref;
}

}  // namespace vklbm
