#include "vklbm/flux.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace vklbm;
using Catch::Approx;

TEST_CASE("burgers split at positive and negative states") {
  auto g = ScalarFlux::burgers();
  auto p = split_by_sign(g, 1.0);
  CHECK(p.plus == Approx(0.5).margin(1e-15));
  CHECK(p.minus == Approx(0.0).margin(1e-15));
  auto m = split_by_sign(g, -0.5);
  CHECK(m.plus == Approx(0.0).margin(1e-15));
  CHECK(m.minus == Approx(-0.125).margin(1e-15));
  CHECK(m.plus - m.minus == Approx(g(-0.5)).margin(1e-15));
}

TEST_CASE("linear advection split") {
  auto s = split_by_sign(ScalarFlux::linear(1.0), 0.7);
  CHECK(s.plus == Approx(0.7).margin(1e-15));
  CHECK(s.minus == Approx(0.0).margin(1e-15));
  auto n = split_by_sign(ScalarFlux::linear(-2.0), 0.5);
  CHECK(n.plus == Approx(0.0).margin(1e-15));
  CHECK(n.minus == Approx(1.0).margin(1e-15));
}

TEST_CASE("split parts are non-decreasing") {
  auto g = ScalarFlux::burgers();
  double prev_p = -1e300, prev_m = -1e300;
  for (int i = 0; i <= 200; ++i) {
    double u = -1.0 + 0.01 * i;
    auto s = g.split(u);
    CHECK(s.plus >= prev_p - 1e-15);
    CHECK(s.minus >= prev_m - 1e-15);
    prev_p = s.plus;
    prev_m = s.minus;
  }
}

TEST_CASE("burgers split consistency over 101 samples") {
  std::vector<double> samples;
  for (int i = 0; i <= 100; ++i) samples.push_back(-1.0 + 0.02 * i);
  auto r = verify_split_consistency(ScalarFlux::burgers(), samples);
  CHECK(r.passed);
  CHECK(r.max_defect <= 1e-12);
}

TEST_CASE("oblique advection split consistency") {
  auto e = oblique_advection(std::numbers::pi / 4);
  REQUIRE(e.flux.size() == 2);
  for (const auto& g : e.flux) {
    auto r = verify_split_consistency(g, {0.0, 0.5, 1.0});
    CHECK(r.passed);
    CHECK(r.max_defect == 0.0);
  }
}

TEST_CASE("oblique advection snaps tiny direction cosines") {
  auto e = oblique_advection(std::numbers::pi / 2);
  CHECK(e.flux[0](1.0) == 0.0);
  CHECK(e.flux[1](1.0) == 1.0);
}

TEST_CASE("inconsistent user split is reported") {
  ScalarFlux bad("bad", [](double u) { return u * u / 2; }, [](double u) { return u; }, {},
                 [](double u) { return FluxSplit{u * u, 0.0}; },
                 [](double u) { return FluxSplit{2 * u, 0.0}; });
  auto r = verify_split_consistency(bad, {0.5, 1.0});
  CHECK_FALSE(r.passed);
  CHECK(r.max_defect == Approx(0.5));
  CHECK(r.worst_sample == 1.0);
}

TEST_CASE("quadrature split matches analytic split") {
  auto g = ScalarFlux::burgers();
  for (double u : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
    auto q = quadrature_split([](double v) { return v; }, [](double v) { return v * v / 2; }, u);
    auto a = g.split(u);
    CHECK(q.plus == Approx(a.plus).margin(1e-12));
    CHECK(q.minus == Approx(a.minus).margin(1e-12));
  }
}

TEST_CASE("generic flux without a split uses quadrature") {
  ScalarFlux cubic("cubic", [](double u) { return u * u * u / 3; },
                   [](double u) { return u * u; });
  auto s = cubic.split(-1.0);
  CHECK(s.plus - s.minus == Approx(-1.0 / 3).margin(1e-12));
  CHECK(s.minus == Approx(0.0).margin(1e-12));
  CHECK(s.plus == Approx(-1.0 / 3).margin(1e-12));
}

TEST_CASE("state outside the admissible range is rejected") {
  ScalarFlux g("bounded", [](double u) { return u; }, [](double) { return 1.0; }, {0.0, 1.0});
  CHECK_THROWS_AS(split_by_sign(g, 2.0), DomainError);
}

TEST_CASE("flux with non-zero value at zero is rejected") {
  ScalarFlux g("offset", [](double u) { return u + 1.0; }, [](double) { return 1.0; });
  CHECK_THROWS_AS(split_by_sign(g, 0.5), ConfigError);
}

TEST_CASE("combine of linear fluxes stays linear") {
  auto g = ScalarFlux::combine(2.0, ScalarFlux::linear(1.0), -1.0, ScalarFlux::linear(0.5));
  REQUIRE(g.slope());
  CHECK(*g.slope() == Approx(1.5));
  CHECK(g(2.0) == Approx(3.0));
}
