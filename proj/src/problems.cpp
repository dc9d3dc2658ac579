#include "vklbm/problems.hpp"

#include "vklbm/references.hpp"

#include <cmath>
#include <numbers>

namespace vklbm {

LatticeModel make_model(const ProblemSetup& p) {
  return LatticeModel(p.kind, p.flux, p.partition);
}

Solver make_solver(const ProblemSetup& p, RelaxationMode mode, SolverOptions opt) {
  return Solver(p.grid, make_model(p), mode, p.bc, p.u0, opt, p.source);
}

ProblemSetup burgers_sine_problem(int points, ModelKind kind) {
  if (points < 5) throw ConfigError("burgers-sine needs at least 5 points");
  if (model_dims(kind) != 1) throw ConfigError("burgers-sine is one-dimensional");
  ProblemSetup p;
  p.name = "burgers-sine";
  p.grid = Grid::line(points - 1, 1.0 / (points - 1));
  p.kind = kind;
  p.flux = burgers_flux().flux;
  p.bc = BoundarySpec::periodic();
  p.u0 = sample(p.grid, [](const Point& x) { return std::sin(2 * std::numbers::pi * x[0]); });
  p.lambda = 1.0;
  p.exact = [](const Point& x, double t) { return burgers_moc(x[0], t); };
  return p;
}

ProblemSetup leveque_yee_problem(int dims, int cells, double mu) {
  if (dims < 1 || dims > 3) throw ConfigError("LeVeque-Yee problem needs 1..3 dimensions");
  if (cells < 4) throw ConfigError("LeVeque-Yee problem needs at least 4 cells");
  ProblemSetup p;
  p.name = dims == 1 ? "ly-1d" : (dims == 2 ? "ly-2d" : "ly-3d");
  const int nodes = cells + 1;
  if (dims == 1) {
    p.grid = Grid::line(nodes, 1.0 / cells);
    p.kind = ModelKind::UpwindD1Q3;
    p.bc.faces[0] = FaceCondition::dirichlet(1.0);
    p.bc.faces[1] = FaceCondition::dirichlet(0.0);
  } else {
    p.grid = dims == 2 ? Grid::square(nodes, 2.0 / cells, -1.0) : Grid::cube(nodes, 2.0 / cells, -1.0);
    p.kind = dims == 2 ? ModelKind::UpwindD2Q5 : ModelKind::UpwindD3Q7;
    for (int f = 0; f < 2 * dims; ++f) p.bc.faces[f] = FaceCondition::dirichlet(0.0);
  }
  p.flux = uniform_advection(dims).flux;
  p.lambda = dims;
  p.source = SourceTerm{
      [mu](const Point&, double u) { return -mu * u * (u - 1.0) * (u - 0.5); },
      [mu](const Point&, double u) { return -mu * (3.0 * u * u - 3.0 * u + 0.5); }};
  p.u0 = sample(p.grid, [dims](const Point& x) { return leveque_yee_exact(x, 0.0, dims); });
  p.exact = [dims](const Point& x, double t) { return leveque_yee_exact(x, t, dims); };
  return p;
}

ProblemSetup embid_problem(int points, double mu) {
  if (points < 5) throw ConfigError("embid needs at least 5 points");
  ProblemSetup p;
  p.name = "embid";
  p.grid = Grid::line(points, 1.0 / (points - 1));
  p.kind = ModelKind::UpwindD1Q3;
  p.flux = burgers_flux().flux;
  p.bc.faces[0] = FaceCondition::dirichlet(1.0);
  p.bc.faces[1] = FaceCondition::dirichlet(-0.1);
  p.source = SourceTerm{[mu](const Point& x, double u) { return mu * (6.0 * x[0] - 3.0) * u; },
                        [mu](const Point& x, double) { return mu * (6.0 * x[0] - 3.0); }};
  p.u0 = sample(p.grid, [](const Point& x) { return x[0] <= 0.1 ? 1.0 : -1.0; });
  // |U| stays below 1 + 3 mu max|x^2 - x| along characteristics
  p.lambda = 1.0 + 0.75 * std::abs(mu);
  return p;
}

ProblemSetup spekreijse_problem(int points, double theta, D2Q9Partition partition,
                                ModelKind kind) {
  if (kind != ModelKind::D2Q9 && kind != ModelKind::UpwindD2Q5)
    throw ConfigError("spekreijse requires the d2q9 or upwind-d2q5 model");
  if (points < 3) throw ConfigError("spekreijse needs at least 3 points per axis");
  ProblemSetup p;
  p.name = "spekreijse";
  p.grid = Grid::square(points, 1.0 / (points - 1));
  p.kind = kind;
  p.flux = oblique_advection(theta).flux;
  p.partition = partition;
  auto exact = [theta](const Point& x) { return spekreijse_exact(x[0], x[1], theta); };
  auto face = [kind](BoundaryValue fn) {
    return kind == ModelKind::D2Q9 ? FaceCondition::characteristic(std::move(fn))
                                   : FaceCondition::dirichlet(std::move(fn));
  };
  p.bc.faces[0] = face([](const Point&) { return 1.0; });
  p.bc.faces[1] = face(exact);
  p.bc.faces[2] = face([](const Point&) { return 0.0; });
  p.bc.faces[3] = face(exact);
  p.u0.assign(p.grid.size(), 0.0);
  p.lambda = make_model(p).subcharacteristic(0.0, p.u0).required_lambda;
  p.exact = [exact](const Point& x, double) { return exact(x); };
  return p;
}

}  // namespace vklbm
