#pragma once

#include "vklbm/grid.hpp"
#include "vklbm/lattice.hpp"
#include "vklbm/macrofd.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vklbm {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long step, long node)
      : std::runtime_error(what), step_(step), node_(node) {}
  long step() const { return step_; }
  long node() const { return node_; }

 private:
  long step_;
  long node_;
};

struct RelaxationMode {
  enum class Kind { Explicit, SemiImplicit };
  Kind kind = Kind::Explicit;
  double omega = 1.0;

  static RelaxationMode explicit_mode(double omega) { return {Kind::Explicit, omega}; }
  static RelaxationMode semi_implicit(double omega) { return {Kind::SemiImplicit, omega}; }
  // omega for explicit, omega/(1+omega) for semi-implicit; throws ConfigError
  // when the explicit factor leaves (0,2) or omega <= 0.
  double effective() const;
};

// ---------------------------------------------------------------------------
// Boundaries
// ---------------------------------------------------------------------------

enum class FaceKind { Periodic, Dirichlet, D2Q9Characteristic };

using BoundaryValue = std::function<double(const Point&)>;

struct FaceCondition {
  FaceKind kind = FaceKind::Periodic;
  BoundaryValue value;

  static FaceCondition periodic() { return {}; }
  static FaceCondition dirichlet(double u);
  static FaceCondition dirichlet(BoundaryValue fn);
  static FaceCondition characteristic(double u);
  static FaceCondition characteristic(BoundaryValue fn);
};

// Faces ordered x-min, x-max, y-min, y-max, z-min, z-max.
struct BoundarySpec {
  std::array<FaceCondition, 6> faces{};

  static BoundarySpec periodic() { return {}; }
  static BoundarySpec all(FaceCondition c);
  bool periodic(int axis) const { return faces[2 * axis].kind == FaceKind::Periodic; }
  void validate(const Grid& grid, const LatticeModel& model, bool with_source) const;
};

enum D2Q9Face : unsigned { kLeft = 1, kRight = 2, kBottom = 4, kTop = 8 };

// Fills the unknown inbound populations of one D2Q9 boundary node from the
// non-equilibrium parts of the known ones. `faces` is a D2Q9Face mask.
void close_d2q9_node(std::span<double> f, std::span<const double> feq, unsigned faces);

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

// Population q of node i lives at f[q * nodes + i].
void collide(std::span<const double> f, std::span<const double> feq, double omega_hat,
             std::span<const double> r, double dt, std::span<double> out);
void collide(std::span<const double> f, std::span<const double> feq,
             const RelaxationMode& mode, std::span<const double> r, double dt,
             std::span<double> out);

// Exact lattice shift. Populations whose source lies outside a non-periodic
// axis are set to NaN; the count of such entries is returned.
size_t stream(std::span<const double> fstar, const VelocitySet& vs, const Grid& grid,
              const BoundarySpec& bc, std::span<double> out);

void moments(std::span<const double> f, int q, std::span<double> u);
std::vector<double> moments(std::span<const double> f, int q, size_t nodes);

struct NewtonResult {
  double u = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool bisected = false;
  bool converged = false;
};

using ScalarFn = std::function<double(double)>;

// Solves U - dt/2 S(U) = F_sum from U_guess; bisection on [lo, hi] when
// Newton stalls.
NewtonResult newton_moment_solve(double f_sum, const ScalarFn& s, const ScalarFn& ds,
                                 double dt, double u_guess, double lo, double hi,
                                 double tol = 1e-12, int max_iter = 50);
double newton_moment_solve(double f_sum, const ScalarFn& s, const ScalarFn& ds, double dt,
                           double u_guess);

double select_timestep(const Grid& grid, double lambda);

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

struct SourceTerm {
  std::function<double(const Point&, double)> value;
  std::function<double(const Point&, double)> derivative;
};

enum class SubcharPolicy { Off, Warn, Fail };

struct SolverOptions {
  double lambda = 1.0;
  bool adaptive_lambda = false;
  double lambda_floor = 1e-12;
  SubcharPolicy subchar = SubcharPolicy::Warn;
  size_t threads = 1;
  size_t history_capacity = 0;  // 0 disables recording
};

struct SolverState {
  Grid grid;
  int q = 0;
  std::vector<double> f;
  std::vector<double> u;
  double t = 0.0;
  long step = 0;
  double lambda = 1.0;
  double dt = 0.0;
};

struct CollisionProbe {
  std::vector<double> f;
  std::vector<double> feq;
  std::vector<double> fstar;
  double omega_hat = 1.0;
};

class Solver {
 public:
  Solver(Grid grid, LatticeModel model, RelaxationMode mode, BoundarySpec bc,
         std::vector<double> u0, SolverOptions opt = {},
         std::optional<SourceTerm> source = std::nullopt);

  void step();
  void run(long steps);

  const SolverState& state() const { return st_; }
  const LatticeModel& model() const { return model_; }
  const Grid& grid() const { return st_.grid; }
  double omega_hat() const { return omega_hat_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const MacroHistory* history() const { return history_.get(); }
  // Resets f to equilibrium of the current U and starts a new history window.
  void reinitialize_equilibrium();

  void capture_collision(bool on) { capture_ = on; }
  const CollisionProbe& probe() const { return probe_; }

  // Sum of populations minus U (plus dt/2 S in source mode) per node.
  double max_moment_residual() const;

 private:
  void check_subcharacteristic();
  void fill_equilibrium(size_t node, double u, double* feq, double* r) const;
  void apply_boundaries(std::vector<double>& f) const;
  void record_history();

  LatticeModel model_;
  RelaxationMode mode_;
  double omega_hat_;
  BoundarySpec bc_;
  SolverOptions opt_;
  std::optional<SourceTerm> source_;
  SolverState st_;
  std::vector<Point> pos_;
  std::vector<unsigned char> reservoir_;
  std::vector<double> reservoir_u_;
  struct FaceNode {
    size_t node;
    unsigned faces;
    double u;
  };
  std::vector<FaceNode> face_nodes_;
  std::vector<double> fstar_;
  std::vector<double> fnext_;
  std::unique_ptr<MacroHistory> history_;
  bool capture_ = false;
  CollisionProbe probe_;
  std::vector<std::string> warnings_;
  bool warned_subchar_ = false;
};

}  // namespace vklbm
