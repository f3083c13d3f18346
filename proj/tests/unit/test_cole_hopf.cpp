#include <cmath>
#include <numbers>

#include "doctest.h"
#include "duhamel/cole_hopf.hpp"
#include "duhamel/diff.hpp"

using namespace duhamel;

namespace {
constexpr double kPi = std::numbers::pi;

VectorField burgers_u0(const Grid& g) {
  return VectorField::sample(g, [](const Point& p) {
    return Point{std::sin(p[0]) / (1 + 0.5 * std::cos(p[0])), 0, 0};
  });
}
}  // namespace

TEST_CASE("potential examples") {
  const auto g2 = Grid::periodic({64, 64}, {2 * kPi / 64, 2 * kPi / 64}, {0, 0});
  const auto zero = VectorField::zeros(g2);
  const auto phi0 = potential_from_velocity(zero, {0, 0, 0}, 1.5);
  CHECK(phi0.min() == 1.5);
  CHECK(phi0.max() == 1.5);

  const auto fs = Grid::free_space({20, 24}, {0.1, 0.2}, {-1.0, -2.0});
  const auto k = VectorField::sample(fs, [](const Point&) { return Point{0.5, -1.25, 0}; });
  const Point x0{0.3, 0.4, 0};
  const auto lin = potential_from_velocity(k, x0, 2.0);
  const auto want = ScalarField::sample(fs, [&](const Point& p) {
    return 2.0 + 0.5 * (p[0] - x0[0]) - 1.25 * (p[1] - x0[1]);
  });
  CHECK(max_abs_diff(lin, want) <= 1e-12);

  const auto grad = VectorField::sample(g2, [](const Point& p) {
    return Point{std::cos(p[0]) * std::sin(p[1]), std::sin(p[0]) * std::cos(p[1]), 0};
  });
  const auto res = potential_with_diagnostics(grad, {0, 0, 0}, 0.0);
  const auto exact = ScalarField::sample(g2, [](const Point& p) { return std::sin(p[0]) * std::sin(p[1]); });
  CHECK(max_abs_diff(res.phi, exact) <= 1e-6);
  CHECK(res.path_gap <= 1e-6);
}

TEST_CASE("rotational data is rejected with its curl") {
  const auto g = Grid::free_space({32, 32}, {0.1, 0.1}, {-1.6, -1.6});
  const auto rot = VectorField::sample(g, [](const Point& p) { return Point{-p[1], p[0], 0}; });
  try {
    potential_from_velocity(rot, {0, 0, 0}, 0.0);
    FAIL("expected CurlError");
  } catch (const CurlError& e) {
    CHECK(e.residual() == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("initial_G and forcing_from_pressure") {
  const auto g = Grid::periodic_1d(64, 2 * kPi);
  CHECK(initial_G(ScalarField::constant(g, 0.0)).min() == 1.0);
  CHECK(initial_G(ScalarField::constant(g, 2 * 0.7)).max() == doctest::Approx(std::exp(-0.7)));
  const auto phi = ScalarField::sample(g, [](const Point& p) { return -2 * std::log(1 + 0.5 * std::cos(p[0])); });
  const auto want = ScalarField::sample(g, [](const Point& p) { return 1 + 0.5 * std::cos(p[0]); });
  CHECK(max_abs_diff(initial_G(phi), want) <= 1e-14);
  CHECK_THROWS_AS(initial_G(ScalarField::constant(g, -1500.0)), DomainError);

  CHECK(forcing_from_pressure(Forcing()).is_zero());
  const auto two = forcing_from_pressure(Forcing::constant(2.0));
  CHECK(two.sup_bound() == 1.0);
  CHECK(two.abs_bound() == 1.0);
  std::vector<ScalarField> snaps{ScalarField::constant(g, 3.0), ScalarField::constant(g, -1.0)};
  const auto half = forcing_from_pressure(Forcing::sampled({0.0, 1.0}, snaps));
  CHECK(half.sup_bound() == 1.5);
  CHECK(half.inf_bound() == -0.5);
}

TEST_CASE("velocity_from_G examples") {
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  const ScalarTrajectory c({0.0, 1.0}, {ScalarField::constant(g, 2.0), ScalarField::constant(g, 2.0)});
  CHECK(velocity_from_G(c).back().max_norm() <= 1e-13);

  const auto fs = Grid::free_space({200}, {0.05}, {-5.0});
  const double a = 0.5;
  std::vector<double> ts{0.0, 0.25};
  std::vector<ScalarField> gs;
  for (double t : ts) {
    gs.push_back(ScalarField::sample(fs, [&](const Point& p) { return std::exp(-p[0] * p[0] / (4 * (a + t))); }));
  }
  const auto u = velocity_from_G(ScalarTrajectory(ts, gs));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto want = ScalarField::sample(fs, [&](const Point& p) { return p[0] / (a + ts[i]); });
    // interior only: one-sided edge stencils are 2nd order
    double worst = 0;
    for (std::size_t p = 40; p < 160; ++p) worst = std::max(worst, std::abs(u[i].component(0)[p] - want[p]));
    CHECK(worst <= 1e-4);
  }

  const double t = 0.5;
  const auto G = ScalarField::sample(g, [&](const Point& p) { return 1 + 0.5 * std::exp(-t) * std::cos(p[0]); });
  const auto ub = velocity_from_G(ScalarTrajectory({t}, {G}));
  const auto want = ScalarField::sample(g, [&](const Point& p) {
    return std::exp(-t) * std::sin(p[0]) / (1 + 0.5 * std::exp(-t) * std::cos(p[0]));
  });
  CHECK(max_abs_diff(ub[0].component(0), want.values()) <= 1e-12);

  const ScalarTrajectory neg({0.0}, {ScalarField::sample(g, [](const Point& p) { return std::cos(p[0]); })});
  CHECK_THROWS_AS(velocity_from_G(neg), NumericalError);
}

TEST_CASE("solve_nse: Burgers fixture and zero data") {
  const auto g = Grid::periodic_1d(256, 2 * kPi);
  SeriesOptions o;
  o.time_steps = 8;
  NSEProblem prob{burgers_u0(g), {0, 0, 0}, -2 * std::log(1.5), Forcing(), 2.0, 0.5, {}};
  const auto sol = solve_nse(prob, o);
  const double t = sol.u.times().back();
  CHECK(t == 0.5);
  const auto want = ScalarField::sample(g, [&](const Point& p) {
    return std::exp(-t) * std::sin(p[0]) / (1 + 0.5 * std::exp(-t) * std::cos(p[0]));
  });
  CHECK(max_abs_diff(sol.u.back().component(0), want.values()) <= 1e-4);
  CHECK(sol.ceiling.passed());
  CHECK(sol.floor.passed());

  NSEProblem zero{VectorField::zeros(g), {0, 0, 0}, 0.3, Forcing(), 1.0, 1.0, {}};
  const auto z = solve_nse(zero, o);
  for (const auto& u : z.u.snapshots()) CHECK(u.max_norm() <= 1e-13);

  NSEProblem fast{burgers_u0(g), {0, 0, 0}, 0.0, Forcing(), 0.1, 1.0, {}};
  CHECK_THROWS_AS(solve_nse(fast, o), ConfigError);
}

TEST_CASE("gauge invariance: shifting a scales G, leaves u") {
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  SeriesOptions o;
  o.time_steps = 8;
  const auto F = Forcing::expression(Expr::parse("0.3*sin(x+t)"), -0.3, 0.3);
  NSEProblem p1{burgers_u0(g), {0, 0, 0}, 0.0, F, 2.0, 0.5, {}};
  NSEProblem p2 = p1;
  p2.a = 1.7;
  const auto s1 = solve_nse(p1, o);
  const auto s2 = solve_nse(p2, o);
  const double ratio = std::exp(-1.7 / 2);
  for (std::size_t i = 0; i < s1.u.size(); ++i) {
    CHECK(max_abs_diff(s1.u[i].component(0), s2.u[i].component(0)) <= 1e-12);
    for (std::size_t p = 0; p < g.size(); p += 17) {
      CHECK(s2.series.G[i][p] == doctest::Approx(ratio * s1.series.G[i][p]).epsilon(1e-12));
    }
  }
}

TEST_CASE("nse_residual") {
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  auto exact = [&](double dt, std::vector<double>& ts) {
    std::vector<VectorField> ex;
    ts.clear();
    for (int i = 0; i <= 4; ++i) {
      const double t = dt * i;
      ts.push_back(t);
      ex.push_back(VectorField::sample(g, [t](const Point& p) {
        return Point{std::exp(-t) * std::sin(p[0]) / (1 + 0.5 * std::exp(-t) * std::cos(p[0])), 0, 0};
      }));
    }
    return ex;
  };
  std::vector<double> ts, ts2;
  std::vector<VectorField> zs(5, VectorField::zeros(g));
  const auto e1 = exact(0.1, ts);
  CHECK(max_residual(nse_residual(VectorTrajectory(ts, zs), Forcing())) == 0.0);
  const double r1 = max_residual(nse_residual(VectorTrajectory(ts, e1), Forcing()));
  const auto e2 = exact(0.05, ts2);
  const double r2 = max_residual(nse_residual(VectorTrajectory(ts2, e2), Forcing()));
  CHECK(r1 > 0.0);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.3));
  CHECK_THROWS_AS(nse_residual(VectorTrajectory({0.0, 0.1}, {zs[0], zs[1]}), Forcing()), ConfigError);
}

TEST_CASE("worst_case_upper_bound") {
  CHECK(worst_case_upper_bound(1, 1, 1, 0) == doctest::Approx(6 * std::exp(0.75)).epsilon(1e-15));
  CHECK(worst_case_upper_bound(1, 1, 1, 0) == doctest::Approx(12.70100000).epsilon(1e-4));
  CHECK(worst_case_upper_bound(0, 1.0, 1e-9, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(worst_case_upper_bound(1, 0, 1, 0), DomainError);
}
