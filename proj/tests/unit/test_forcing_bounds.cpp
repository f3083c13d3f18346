#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "duhamel/bounds.hpp"
#include "duhamel/forcing.hpp"
#include "duhamel/series.hpp"

using namespace duhamel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("forcing constructors and bounds") {
  const auto c = Forcing::constant(-0.5);
  CHECK(c.inf_bound() == -0.5);
  CHECK(c.sup_bound() == 0.0);
  CHECK(c.abs_bound() == 0.5);
  double v = 0;
  CHECK(c.is_constant(&v));
  CHECK(v == -0.5);
  CHECK(Forcing().is_zero());

  const auto e = Forcing::expression(Expr::parse("sin(x)*t"));
  CHECK_FALSE(e.has_bounds());
  CHECK_THROWS(e.sup_bound());
  const auto g = Grid::periodic_1d(64, 2 * kPi);
  const auto est = e.estimate_bounds(g, 2.0, 16);
  CHECK(est.sup_bound() == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(est.inf_bound() <= -1.9);
  CHECK(e.with_bounds(-3, 3).abs_bound() == 3.0);
  CHECK_THROWS_AS(e.with_bounds(1.0, -1.0), ConfigError);

  const auto b = Forcing::expression(Expr::parse("2*cos(x)"), -1.0, 1.0);
  CHECK_THROWS_AS(b.sample(g, 0.0), NumericalError);  // declared bound is false
  const auto h = Forcing::expression(Expr::parse("2*cos(x)"), -2.0, 2.0).halved();
  CHECK(h.sup_bound() == 1.0);
  CHECK(h.sample(g, 0.0)[0] == doctest::Approx(1.0));
}

TEST_CASE("sampled stacks interpolate linearly in time") {
  const auto g = Grid::periodic_1d(8, 1.0);
  const auto s = Forcing::sampled({0.0, 1.0}, {ScalarField::constant(g, 1.0), ScalarField::constant(g, 3.0)});
  CHECK(s.sample(g, 0.25)[2] == doctest::Approx(1.5));
  CHECK(s.sample(g, 2.0)[0] == 3.0);
  CHECK(s.sup_bound() == 3.0);
  CHECK_THROWS_AS(s.sample(Grid::periodic_1d(8, 2.0), 0.0), ConfigError);
}

TEST_CASE("pointwise comparison counts violations beyond slack") {
  const std::vector<double> rhs{1.0, 2.0, 0.0};
  const std::vector<double> ok{1.0 + 5e-10, 2.0, 1e-13};
  CHECK(compare_pointwise(ok, rhs, 0.1, -1).violations == 0);
  const std::vector<double> bad{1.0 + 1e-6, 2.0, 0.0};
  const auto e = compare_pointwise(bad, rhs, 0.1, 3);
  CHECK(e.violations == 1);
  CHECK(e.location == 0);
  CHECK(e.term == 3);
  CHECK(e.max_violation == doctest::Approx(1e-6));
}

TEST_CASE("bound checks on a saturated and an undershooting M") {
  const auto g = Grid::periodic_1d(64, 2 * kPi);
  const auto G0 = ScalarField::sample(g, [](const Point& p) { return 1.0 + 0.5 * std::cos(p[0]); });
  SeriesOptions o;
  o.time_steps = 32;  // the saturated case holds with equality, so quadrature error shows
  const auto sol = solve_controlled_heat(G0, Forcing::constant(1.0), 1.0, o);
  CHECK(ceiling_check(sol, G0, 1.0).passed());
  CHECK(termwise_factorial_check(sol, G0, 1.0).passed());
  CHECK_FALSE(ceiling_check(sol, G0, 0.5).passed());
  CHECK_FALSE(termwise_factorial_check(sol, G0, 0.5).passed());
  CHECK_THROWS_AS(ceiling_check(sol, G0, -1.0), ConfigError);
  std::ostringstream os;
  ceiling_check(sol, G0, 1.0).write_jsonl(os);
  CHECK(os.str().find("\"check\":\"ceiling\"") != std::string::npos);
}
