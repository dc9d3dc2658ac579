#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vklbm {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double u) const { return u >= lo && u <= hi; }
};

// Sign convention: G = plus - minus, with both parts non-decreasing in U.
// The minus part is the primitive of -min(dG/dU, 0) taken from 0, so for
// Burgers at U = -0.5 it is -0.125.
struct FluxSplit {
  double plus = 0.0;
  double minus = 0.0;
};

class ScalarFlux {
 public:
  using Fn = std::function<double(double)>;
  using SplitFn = std::function<FluxSplit(double)>;

  ScalarFlux() = default;

  // When split/split_jacobian are omitted the sign-based split is built by
  // adaptive quadrature of the Jacobian's positive part.
  ScalarFlux(std::string name, Fn eval, Fn jacobian, Interval range = {},
             SplitFn split = {}, SplitFn split_jacobian = {});

  double operator()(double u) const { return eval_(u); }
  double eval(double u) const { return eval_(u); }
  double jacobian(double u) const { return jac_(u); }
  FluxSplit split(double u) const;
  FluxSplit split_jacobian(double u) const;

  const std::string& name() const { return name_; }
  const Interval& admissible() const { return range_; }

  // Non-empty for fluxes of the form a*U.
  std::optional<double> slope() const { return slope_; }

  static ScalarFlux linear(double a);
  static ScalarFlux burgers();
  static ScalarFlux zero();
  // c*g with the split of g scaled (and swapped for c < 0).
  static ScalarFlux scaled(double c, const ScalarFlux& g);
  // c1*g1 + c2*g2, splits combined by sign of the coefficients when both
  // inputs are linear, quadrature otherwise.
  static ScalarFlux combine(double c1, const ScalarFlux& g1, double c2,
                            const ScalarFlux& g2);

 private:
  std::string name_;
  Fn eval_;
  Fn jac_;
  Interval range_;
  SplitFn split_;
  SplitFn split_jac_;
  std::optional<double> slope_;
};

// One flux per spatial direction.
using FluxSet = std::vector<ScalarFlux>;

FluxSplit split_by_sign(const ScalarFlux& flux, double u);

struct SplitReport {
  double max_defect = 0.0;
  double worst_sample = 0.0;
  bool passed = true;
};

SplitReport verify_split_consistency(const ScalarFlux& flux,
                                     const std::vector<double>& samples);

// Quadrature split of an arbitrary flux; exposed for cross-checks.
FluxSplit quadrature_split(const ScalarFlux::Fn& jacobian, const ScalarFlux::Fn& eval,
                           double u);

struct FluxLibraryEntry {
  std::string name;
  FluxSet flux;
  Interval range;
};

// Built-ins: "linear" (a), "uniform" (dims), "oblique" (theta), "burgers".
FluxLibraryEntry linear_advection(double a);
FluxLibraryEntry uniform_advection(int dims);
FluxLibraryEntry oblique_advection(double theta);
FluxLibraryEntry burgers_flux();

}  // namespace vklbm
