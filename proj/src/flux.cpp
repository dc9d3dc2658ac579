#include "vklbm/flux.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace vklbm {

namespace {

constexpr double kQuadTol = 1e-12;

FluxSplit linear_split(double a, double u) {
  if (a > 0.0) return {a * u, 0.0};
  return {0.0, -a * u + 0.0};
}

FluxSplit linear_split_jac(double a) {
  if (a > 0.0) return {a, 0.0};
  return {0.0, -a + 0.0};
}

double integrate(const std::function<double(double)>& g, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 31>::integrate(g, a, b, 10, kQuadTol, &err);
}

// Integral of max(J, 0) over [0, u]. Sign changes of J are bracketed on a
// uniform sample and refined by bisection so each piece is smooth.
double positive_part_integral(const std::function<double(double)>& jac, double u) {
  if (u == 0.0) return 0.0;
  const double a = std::min(0.0, u), b = std::max(0.0, u);
  if (b - a < 1e-8) {
    double ja = std::max(jac(a), 0.0), jm = std::max(jac((a + b) / 2), 0.0),
           jb = std::max(jac(b), 0.0);
    double v = (b - a) * (ja + 4 * jm + jb) / 6;
    return u > 0.0 ? v : -v;
  }
  constexpr int kSamples = 64;
  std::vector<double> cuts{a};
  double xl = a, jl = jac(a);
  for (int k = 1; k <= kSamples; ++k) {
    double xr = a + (b - a) * k / kSamples;
    double jr = jac(xr);
    if ((jl > 0.0) != (jr > 0.0)) {
      double lo = xl, hi = xr;
      const bool left_pos = jl > 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        double mid = lo + (hi - lo) / 2;
        if ((jac(mid) > 0.0) == left_pos) lo = mid;
        else hi = mid;
      }
      cuts.push_back(lo + (hi - lo) / 2);
    }
    xl = xr;
    jl = jr;
  }
  cuts.push_back(b);
  double total = 0.0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double l = cuts[k], r = cuts[k + 1];
    if (r - l <= 1e-14 * (b - a)) continue;
    if (jac(l + (r - l) / 2) > 0.0) total += integrate(jac, l, r);
  }
  return u > 0.0 ? total : -total;
}

}  // namespace

FluxSplit quadrature_split(const ScalarFlux::Fn& jacobian, const ScalarFlux::Fn& eval,
                           double u) {
  double plus = positive_part_integral(jacobian, u);
  return {plus, plus - eval(u)};
}

ScalarFlux::ScalarFlux(std::string name, Fn eval, Fn jacobian, Interval range,
                       SplitFn split, SplitFn split_jacobian)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      jac_(std::move(jacobian)),
      range_(range),
      split_(std::move(split)),
      split_jac_(std::move(split_jacobian)) {
  if (!eval_ || !jac_) throw ConfigError("flux '" + name_ + "' needs eval and jacobian");
}

FluxSplit ScalarFlux::split(double u) const {
  if (split_) return split_(u);
  return quadrature_split(jac_, eval_, u);
}

FluxSplit ScalarFlux::split_jacobian(double u) const {
  if (split_jac_) return split_jac_(u);
  double d = jac_(u);
  if (d > 0.0) return {d, 0.0};
  return {0.0, -d + 0.0};
}

ScalarFlux ScalarFlux::linear(double a) {
  std::ostringstream name;
  name << "linear(" << a << ")";
  ScalarFlux f(
      name.str(), [a](double u) { return a * u; }, [a](double) { return a; }, {},
      [a](double u) { return linear_split(a, u); },
      [a](double) { return linear_split_jac(a); });
  f.slope_ = a;
  return f;
}

ScalarFlux ScalarFlux::zero() { return linear(0.0); }

ScalarFlux ScalarFlux::burgers() {
  return ScalarFlux(
      "burgers", [](double u) { return 0.5 * u * u; }, [](double u) { return u; }, {},
      [](double u) -> FluxSplit {
        if (u > 0.0) return {0.5 * u * u, 0.0};
        return {0.0, -0.5 * u * u};
      },
      [](double u) -> FluxSplit {
        if (u > 0.0) return {u, 0.0};
        return {0.0, -u + 0.0};
      });
}

ScalarFlux ScalarFlux::scaled(double c, const ScalarFlux& g) {
  if (g.slope_) return linear(c * *g.slope_);
  if (c == 0.0) return zero();
  auto flip = [c](FluxSplit s) -> FluxSplit {
    if (c > 0.0) return {c * s.plus, c * s.minus};
    return {-c * s.minus, -c * s.plus};
  };
  return ScalarFlux(
      "scaled", [=](double u) { return c * g(u); }, [=](double u) { return c * g.jacobian(u); },
      g.range_, [=](double u) { return flip(g.split(u)); },
      [=](double u) { return flip(g.split_jacobian(u)); });
}

ScalarFlux ScalarFlux::combine(double c1, const ScalarFlux& g1, double c2,
                               const ScalarFlux& g2) {
  if (g1.slope_ && g2.slope_) return linear(c1 * *g1.slope_ + c2 * *g2.slope_);
  if (c1 == 0.0 && c2 == 0.0) return zero();
  if (c1 == 1.0 && c2 == 0.0) return g1;
  if (c1 == 0.0 && c2 == 1.0) return g2;
  if (c2 == 0.0 || (g2.slope_ && *g2.slope_ == 0.0)) return scaled(c1, g1);
  if (c1 == 0.0 || (g1.slope_ && *g1.slope_ == 0.0)) return scaled(c2, g2);
  Interval r{std::max(g1.range_.lo, g2.range_.lo), std::min(g1.range_.hi, g2.range_.hi)};
  return ScalarFlux(
      "combine", [=](double u) { return c1 * g1(u) + c2 * g2(u); },
      [=](double u) { return c1 * g1.jacobian(u) + c2 * g2.jacobian(u); }, r);
}

FluxSplit split_by_sign(const ScalarFlux& flux, double u) {
  if (!flux.admissible().contains(u)) {
    std::ostringstream os;
    os << "U=" << u << " outside admissible range of flux '" << flux.name() << "'";
    throw DomainError(os.str());
  }
  if (std::abs(flux(0.0)) > 1e-12)
    throw ConfigError("sign-based split requires G(0)=0 for flux '" + flux.name() + "'");
  return flux.split(u);
}

SplitReport verify_split_consistency(const ScalarFlux& flux,
                                     const std::vector<double>& samples) {
  SplitReport rep;
  for (double u : samples) {
    FluxSplit s = flux.split(u);
    double d = std::abs(s.plus - s.minus - flux(u));
    if (d > rep.max_defect) {
      rep.max_defect = d;
      rep.worst_sample = u;
    }
  }
  rep.passed = rep.max_defect <= 1e-12;
  return rep;
}

FluxLibraryEntry linear_advection(double a) {
  return {"linear", {ScalarFlux::linear(a)}, {}};
}

FluxLibraryEntry uniform_advection(int dims) {
  if (dims < 1 || dims > 3) throw ConfigError("uniform advection needs 1..3 dimensions");
  return {"uniform", FluxSet(static_cast<size_t>(dims), ScalarFlux::linear(1.0)), {}};
}

FluxLibraryEntry oblique_advection(double theta) {
  double a = std::cos(theta);
  double b = std::sin(theta);
  if (std::abs(a) < 1e-15) a = 0.0;
  if (std::abs(b) < 1e-15) b = 0.0;
  return {"oblique", {ScalarFlux::linear(a), ScalarFlux::linear(b)}, {}};
}

FluxLibraryEntry burgers_flux() { return {"burgers", {ScalarFlux::burgers()}, {}}; }

}  // namespace vklbm
