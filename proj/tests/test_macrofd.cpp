#include "vklbm/diagnostics.hpp"
#include "vklbm/macrofd.hpp"
#include "vklbm/solver.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace vklbm;
using Catch::Approx;

namespace {

std::vector<double> sine(const Grid& g) {
  return sample(g, [](const Point& x) { return std::sin(2 * std::numbers::pi * x[0]); });
}

MacroHistory one_level(const LatticeModel& m, const Grid& g, std::vector<double> u, double dt,
                       double w) {
  MacroHistory h(g, m.kind(), m.channel_offsets(), w);
  h.push(MacroHistory::make_level(m, std::move(u), dt));
  return h;
}

}  // namespace

TEST_CASE("multistep weights") {
  auto w = multistep_weights(0.6, 3);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == Approx(0.6));
  CHECK(w[1] == Approx(0.24));
  CHECK(w[2] == Approx(0.096));
  CHECK(w[3] == Approx(0.064));
  double s = 0.0;
  for (double v : multistep_weights(1.9, 20)) s += v;
  CHECK(s == Approx(1.0).margin(1e-12));
}

TEST_CASE("first underlying update is forward-Euler upwind") {
  Grid g = Grid::line(20, 0.05);
  LatticeModel m(ModelKind::UpwindD1Q3, burgers_flux().flux);
  auto u = sine(g);
  auto h = one_level(m, g, u, 0.05, 1.0);
  const size_t n = u.size();
  for (size_t i = 0; i < n; ++i) {
    auto gp = [](double v) { return v > 0 ? v * v / 2 : 0.0; };
    auto gm = [](double v) { return v < 0 ? -v * v / 2 : 0.0; };
    size_t l = (i + n - 1) % n, r = (i + 1) % n;
    double e = u[i] - ((gp(u[i]) - gp(u[l])) - (gm(u[r]) - gm(u[i])));
    CHECK(underlying_update(h, i, 0) == Approx(e).margin(1e-15));
  }
  CHECK(multistep_reconstruct(h) == underlying_field(h, 0));
}

TEST_CASE("constant field is left unchanged") {
  Grid g = Grid::line(12, 0.1);
  LatticeModel m(ModelKind::D1Q3, burgers_flux().flux);
  MacroHistory h(g, m.kind(), m.channel_offsets(), 0.7);
  for (int k = 0; k < 4; ++k) h.push(MacroHistory::make_level(m, std::vector<double>(12, 0.3), 0.1));
  for (size_t k = 0; k <= h.depth(); ++k)
    for (double v : underlying_field(h, k)) CHECK(v == Approx(0.3).margin(1e-15));
  for (size_t i = 0; i < 12; ++i) CHECK(consistency_residual(h, burgers_flux().flux[0], i) <= 1e-13);
}

TEST_CASE("unit Courant number shifts a step by one cell") {
  Grid g = Grid::line(10, 0.1);
  LatticeModel m(ModelKind::UpwindD1Q3, linear_advection(1.0).flux);
  std::vector<double> u{1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
  auto h = one_level(m, g, u, 0.1, 1.0);
  auto out = underlying_field(h, 0);
  std::vector<double> expect{0, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  for (size_t i = 0; i < 10; ++i) CHECK(out[i] == Approx(expect[i]).margin(1e-15));
}

TEST_CASE("short histories are rejected") {
  Grid g = Grid::line(10, 0.1);
  LatticeModel m(ModelKind::UpwindD1Q3, linear_advection(1.0).flux);
  MacroHistory h(g, m.kind(), m.channel_offsets(), 0.5);
  CHECK_THROWS_AS(multistep_reconstruct(h), InsufficientHistory);
  h.push(MacroHistory::make_level(m, std::vector<double>(10, 0.0), 0.1));
  CHECK_THROWS_AS(underlying_update(h, 0, 1), InsufficientHistory);
}

TEST_CASE("window past capacity is flagged") {
  Grid g = Grid::line(10, 0.1);
  LatticeModel m(ModelKind::UpwindD1Q3, linear_advection(1.0).flux);
  MacroHistory h(g, m.kind(), m.channel_offsets(), 0.5, 3);
  for (int k = 0; k < 4; ++k) h.push(MacroHistory::make_level(m, std::vector<double>(10, 0.0), 0.1));
  CHECK(h.window_valid());
  h.push(MacroHistory::make_level(m, std::vector<double>(10, 0.0), 0.1));
  CHECK_FALSE(h.window_valid());
  CHECK_THROWS_AS(multistep_reconstruct(h), InsufficientHistory);
}

TEST_CASE("reconstruction matches the kinetic evolution") {
  Grid g = Grid::line(20, 1.0 / 20);
  SolverOptions opt;
  opt.history_capacity = 64;
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
           RelaxationMode::explicit_mode(0.6), BoundarySpec::periodic(), sine(g), opt);
  for (int n = 0; n < 30; ++n) {
    s.step();
    auto r = multistep_reconstruct(*s.history());
    for (size_t i = 0; i < r.size(); ++i) REQUIRE(std::abs(r[i] - s.state().u[i]) <= 1e-12);
  }
}

TEST_CASE("monotone step keeps unit variation") {
  Grid g = Grid::line(40, 1.0 / 39);
  BoundarySpec bc;
  bc.faces[0] = FaceCondition::dirichlet(1.0);
  bc.faces[1] = FaceCondition::dirichlet(0.0);
  auto u0 = sample(g, [](const Point& x) { return x[0] < 0.3 ? 1.0 : 0.0; });
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, linear_advection(1.0).flux),
           RelaxationMode::explicit_mode(0.8), bc, u0);
  for (int n = 0; n < 30; ++n) {
    s.step();
    CHECK(total_variation(s.state().u) == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("burgers sine variation does not grow at relaxation factor one") {
  Grid g = Grid::line(40, 1.0 / 40);
  SolverOptions opt;
  opt.history_capacity = 200;
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
           RelaxationMode::explicit_mode(1.0), BoundarySpec::periodic(), sine(g), opt);
  double prev = total_variation(s.state().u, true);
  for (int n = 0; n < 100; ++n) {
    s.step();
    double tv = total_variation(s.state().u, true);
    CHECK(tv <= prev + 1e-12);
    auto rep = tv_bound_check(*s.history(), s.state().u);
    CHECK(rep.within_max);
    prev = tv;
  }
}

TEST_CASE("over-relaxed bound is reported") {
  Grid g = Grid::line(40, 1.0 / 40);
  SolverOptions opt;
  opt.history_capacity = 64;
  Solver s(g, LatticeModel(ModelKind::UpwindD1Q3, burgers_flux().flux),
           RelaxationMode::explicit_mode(1.9), BoundarySpec::periodic(), sine(g), opt);
  s.run(10);
  auto rep = tv_bound_check(*s.history(), s.state().u);
  CHECK(std::isfinite(rep.weighted_bound));
  CHECK(rep.weighted_bound >= rep.max_tv_underlying);
  CHECK(rep.tv_initial == Approx(total_variation(sine(g), true)));
}
