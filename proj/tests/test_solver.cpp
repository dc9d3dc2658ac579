#include "vklbm/solver.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace vklbm;
using Catch::Approx;

namespace {

std::vector<double> sine_field(const Grid& g) {
  return sample(g, [](const Point& x) { return std::sin(2 * std::numbers::pi * x[0]); });
}

// One forward-Euler upwind update of Burgers with dt = dx, periodic.
std::vector<double> euler_upwind(const std::vector<double>& u) {
  const size_t n = u.size();
  auto gp = [](double v) { return v > 0 ? v * v / 2 : 0.0; };
  auto gm = [](double v) { return v < 0 ? -v * v / 2 : 0.0; };
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    size_t l = (i + n - 1) % n, r = (i + 1) % n;
    out[i] = u[i] - ((gp(u[i]) - gp(u[l])) - (gm(u[r]) - gm(u[i])));
  }
  return out;
}

}  // namespace

TEST_CASE("relaxation factor of each mode") {
  CHECK(RelaxationMode::explicit_mode(1.4).effective() == 1.4);
  CHECK(RelaxationMode::semi_implicit(1.0).effective() == 0.5);
  CHECK(RelaxationMode::semi_implicit(4.0).effective() == Approx(0.8));
  CHECK_THROWS_AS(RelaxationMode::explicit_mode(2.0).effective(), ConfigError);
  CHECK_THROWS_AS(RelaxationMode::explicit_mode(0.0).effective(), ConfigError);
  CHECK_THROWS_AS(RelaxationMode::semi_implicit(-1.0).effective(), ConfigError);
}

TEST_CASE("collision blends toward equilibrium") {
  std::vector<double> f{0.3, -1.0, 2.0}, feq{1.0, 0.0, 0.5}, out(3);
  collide(f, feq, 1.0, {}, 0.1, out);
  CHECK(out == feq);
  std::vector<double> one{1.0}, zero{0.0}, half(1);
  collide(one, zero, 0.5, {}, 0.1, half);
  CHECK(half[0] == 0.5);
  std::vector<double> r{2.0, 0.0, -2.0};
  collide(f, feq, 1.0, r, 0.1, out);
  CHECK(out[0] == Approx(1.1));
  CHECK(out[2] == Approx(0.4));
}

TEST_CASE("semi-implicit collision equals explicit with the mapped factor") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> f(30), feq(30), a(30), b(30);
  for (auto& v : f) v = d(rng);
  for (auto& v : feq) v = d(rng);
  collide(f, feq, RelaxationMode::semi_implicit(1.0), {}, 0.1, a);
  collide(f, feq, RelaxationMode::explicit_mode(0.5), {}, 0.1, b);
  CHECK(a == b);
}

TEST_CASE("periodic streaming is a cyclic shift") {
  Grid g = Grid::line(3, 1.0);
  auto vs = velocity_set(ModelKind::UpwindD1Q3);
  std::vector<double> fs{1, 2, 3, 4, 5, 6, 7, 8, 9}, out(9);
  size_t unresolved = stream(fs, vs, g, BoundarySpec::periodic(), out);
  CHECK(unresolved == 0);
  CHECK(std::vector<double>(out.begin(), out.begin() + 3) == std::vector<double>{3, 1, 2});
  CHECK(std::vector<double>(out.begin() + 3, out.begin() + 6) == std::vector<double>{4, 5, 6});
  CHECK(std::vector<double>(out.begin() + 6, out.end()) == std::vector<double>{8, 9, 7});
}

TEST_CASE("streaming marks populations entering through closed faces") {
  Grid g = Grid::line(4, 1.0);
  auto vs = velocity_set(ModelKind::UpwindD1Q3);
  BoundarySpec bc;
  bc.faces[0] = FaceCondition::dirichlet(0.0);
  bc.faces[1] = FaceCondition::dirichlet(0.0);
  std::vector<double> fs(12, 1.0), out(12);
  CHECK(stream(fs, vs, g, bc, out) == 2);
  CHECK(std::isnan(out[0]));
  CHECK(std::isnan(out[11]));
}

TEST_CASE("moments sum populations") {
  LatticeModel m(ModelKind::UpwindD1Q3, burgers_flux().flux);
  auto f = m.equilibrium(0.7, 1.0);
  CHECK(moments(f, 3, 1)[0] == Approx(0.7).margin(1e-15));
  CHECK(moments(std::vector<double>(6, 0.0), 3, 2) == std::vector<double>{0.0, 0.0});

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> r(9 * 50);
  for (auto& v : r) v = d(rng);
  auto u = moments(r, 9, 50);
  for (size_t i = 0; i < 50; ++i) {
    double s = 0.0;
    for (int q = 0; q < 9; ++q) s += r[q * 50 + i];
    CHECK(std::abs(u[i] - s) <= 1e-15);
  }
}

TEST_CASE("moment solve with no source returns the sum") {
  auto zero = [](double) { return 0.0; };
  CHECK(newton_moment_solve(0.42, zero, zero, 0.1, 0.0) == 0.42);
}

TEST_CASE("moment solve with a linear source has a closed form") {
  const double c = 3.0, dt = 0.1;
  double u = newton_moment_solve(0.9, [&](double v) { return c * v; }, [&](double) { return c; },
                                 dt, 0.0);
  CHECK(u == Approx(0.9 / (1 - dt * c / 2)).epsilon(1e-14));
}

TEST_CASE("moment solve with the stiff cubic source") {
  const double mu = 100, dt = 0.02;
  auto s = [&](double u) { return -mu * u * (u - 1) * (u - 0.5); };
  auto ds = [&](double u) { return -mu * (3 * u * u - 3 * u + 0.5); };
  double u = newton_moment_solve(0.9, s, ds, dt, 0.9);
  CHECK(std::abs(u - 0.92845937134548837085) <= 1e-12);
  CHECK(std::abs(u - dt / 2 * s(u) - 0.9) <= 1e-12);
}

TEST_CASE("moment solve falls back to bisection") {
  // Newton cycles between +-1 for atan-like residuals started far away.
  auto s = [](double u) { return -2.0 / 0.1 * (std::atan(u) - u); };
  auto ds = [](double u) { return -2.0 / 0.1 * (1.0 / (1 + u * u) - 1.0); };
  NewtonResult r = newton_moment_solve(0.0, s, ds, 0.1, 1.5, -3.0, 3.0);
  CHECK(r.converged);
  CHECK(std::abs(r.u) <= 1e-10);
}

TEST_CASE("time step from lattice speed") {
  CHECK(select_timestep(Grid::line(41, 0.025), 1.0) == 0.025);
  CHECK(select_timestep(Grid::line(51, 0.02), 2.0) == 0.01);
  CHECK_THROWS_AS(select_timestep(Grid::line(5, 0.1), 0.0), ConfigError);
}

TEST_CASE("relaxation factor one reproduces forward-Euler upwind") {
  Grid g = Grid::line(40, 1.0 / 40);
  auto u0 = sine_field(g);
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
           RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(), u0);
  auto ref = u0;
  for (int n = 0; n < 20; ++n) {
    s.step();
    ref = euler_upwind(ref);
    for (size_t i = 0; i < ref.size(); ++i) REQUIRE(std::abs(s.state().u[i] - ref[i]) <= 1e-14);
  }
}

TEST_CASE("zero and constant fields are stationary") {
  Grid g = Grid::line(30, 1.0 / 30);
  for (double c : {0.0, 0.37}) {
    Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
             RelaxationMode::explicit_mode(1.3), BoundarySpec::periodic(),
             std::vector<double>(g.size(), c));
    s.run(50);
    for (double v : s.state().u) CHECK(std::abs(v - c) <= 1e-13);
  }
  Grid g2 = Grid::square(12, 1.0 / 12);
  Solver s2(g2, LatticeModel(ModelKind::D2Q9, oblique_advection(0.4).flux, D2Q9Partition::custom(0.5)),
            RelaxationMode::explicit_mode(0.8), BoundarySpec::periodic(),
            std::vector<double>(g2.size(), -0.25));
  s2.run(20);
  for (double v : s2.state().u) CHECK(std::abs(v + 0.25) <= 1e-13);
}

TEST_CASE("adaptive lattice speed gives non-increasing time steps") {
  Grid g = Grid::line(40, 1.0 / 40);
  SolverOptions opt;
  opt.adaptive_lambda = true;
  SourceTerm grow{[](const Point&, double u) { return 2.0 * u; },
                  [](const Point&, double) { return 2.0; }};
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
           RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(),
           std::vector<double>(g.size(), 0.5), opt, grow);
  CHECK_FALSE(s.warnings().empty());
  double prev = s.state().dt;
  for (int n = 0; n < 30; ++n) {
    s.step();
    CHECK(s.state().dt <= prev);
    prev = s.state().dt;
  }
  CHECK(s.state().lambda > 1.0);
}

TEST_CASE("sub-characteristic policy") {
  Grid g = Grid::line(20, 0.05);
  LatticeModel m(ModelKind::UpwindD1Q3, burgers_flux().flux);
  auto u0 = sine_field(g);
  SolverOptions opt;
  opt.lambda = 0.5;
  opt.subchar = SubcharPolicy::Fail;
  CHECK_THROWS_AS(Solver(g, m, RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(), u0, opt),
                  SolverError);
  opt.subchar = SubcharPolicy::Warn;
  Solver s(g, m, RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(), u0, opt);
  CHECK(s.warnings().size() == 1);
}

TEST_CASE("invalid setups are rejected") {
  Grid g = Grid::line(20, 0.05);
  LatticeModel m(ModelKind::UpwindD1Q3, burgers_flux().flux);
  CHECK_THROWS_AS(Solver(g, m, RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(),
                         std::vector<double>(3, 0.0)),
                  ConfigError);
  CHECK_THROWS_AS(Solver(Grid::square(5, 0.25), m, RelaxationMode::explicit_mode(1.0),
                         BoundarySpec::periodic(), std::vector<double>(25, 0.0)),
                  ConfigError);
  BoundarySpec half;
  half.faces[0] = FaceCondition::dirichlet(1.0);
  CHECK_THROWS_AS(Solver(g, m, RelaxationMode::explicit_mode(1.0), half,
                         std::vector<double>(20, 0.0)),
                  ConfigError);
  BoundarySpec ch = BoundarySpec::all(FaceCondition::characteristic(0.0));
  CHECK_THROWS_AS(Solver(g, m, RelaxationMode::explicit_mode(1.0), ch,
                         std::vector<double>(20, 0.0)),
                  ConfigError);
}

TEST_CASE("threaded and serial runs agree bitwise") {
  Grid g = Grid::square(24, 1.0 / 24);
  LatticeModel m(ModelKind::UpwindD2Q5, {ScalarFlux::burgers(), ScalarFlux::linear(0.5)});
  auto u0 = sample(g, [](const Point& x) {
    return std::sin(2 * std::numbers::pi * x[0]) * std::cos(2 * std::numbers::pi * x[1]);
  });
  SolverOptions a, b;
  a.lambda = b.lambda = 2.0;
  b.threads = 4;
  Solver s1(g, m, RelaxationMode::explicit_mode(1.2), BoundarySpec::periodic(), u0, a);
  Solver s2(g, m, RelaxationMode::explicit_mode(1.2), BoundarySpec::periodic(), u0, b);
  s1.run(15);
  s2.run(15);
  CHECK(s1.state().u == s2.state().u);
  CHECK(s1.state().f == s2.state().f);
}

TEST_CASE("moment residual is zero after a source step") {
  Grid g = Grid::line(30, 1.0 / 30);
  SourceTerm src{[](const Point&, double u) { return -50 * u * (u - 1) * (u - 0.5); },
                 [](const Point&, double u) { return -50 * (3 * u * u - 3 * u + 0.5); }};
  auto u0 = sample(g, [](const Point& x) { return x[0] < 0.5 ? 0.9 : 0.2; });
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, linear_advection(1.0).flux),
           RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(), u0, {}, src);
  s.run(10);
  CHECK(s.max_moment_residual() <= 1e-12);
}
