#pragma once

#include "vklbm/solver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vklbm {

struct ProblemSetup {
  std::string name;
  Grid grid;
  ModelKind kind = ModelKind::UpwindD1Q3;
  FluxSet flux;
  D2Q9Partition partition;
  BoundarySpec bc;
  std::optional<SourceTerm> source;
  std::vector<double> u0;
  double lambda = 1.0;
  // Exact solution at (x, t) where one is known.
  std::function<double(const Point&, double)> exact;
};

Solver make_solver(const ProblemSetup& p, RelaxationMode mode, SolverOptions opt);
LatticeModel make_model(const ProblemSetup& p);

// sin(2 pi x) on [0,1], periodic; `points` counts both end points, the last
// one is the periodic image of the first and is not stored.
ProblemSetup burgers_sine_problem(int points, ModelKind kind = ModelKind::UpwindD1Q3);

// Step/disc/ball of radius^2 0.3 advected with unit speed per axis under the
// stiff source -mu U (U-1)(U-1/2). `cells` per axis, dx = extent / cells.
ProblemSetup leveque_yee_problem(int dims, int cells, double mu);

// Burgers with source mu (6x - 3) U on [0,1], `points` nodes.
ProblemSetup embid_problem(int points, double mu);

// Oblique advection on [0,1]^2 with inflow 1 on the left and 0 at the bottom.
ProblemSetup spekreijse_problem(int points, double theta, D2Q9Partition partition,
                                ModelKind kind = ModelKind::D2Q9);

}  // namespace vklbm
