#include <cmath>
#include <numbers>

#include "doctest.h"
#include "duhamel/error.hpp"
#include "duhamel/expr.hpp"

using duhamel::Expr;
using duhamel::Var;

TEST_CASE("expression parsing and evaluation") {
  CHECK(Expr::parse("1 + 2*3").constant_value() == 7.0);
  CHECK(Expr::parse("2^3^2").constant_value() == 512.0);  // right associative
  CHECK(Expr::parse("-2^2").constant_value() == -4.0);
  CHECK(Expr::parse("2*pi").constant_value() == doctest::Approx(2 * std::numbers::pi));
  CHECK(Expr::parse("e").constant_value() == doctest::Approx(std::numbers::e));
  CHECK(Expr::parse("1e-3").constant_value() == 1e-3);

  const Expr f = Expr::parse("sin(x)*exp(-t) + y^2 - sqrt(z)");
  CHECK(f.eval(0.5, 2.0, 4.0, 1.0) == doctest::Approx(std::sin(0.5) * std::exp(-1.0) + 4.0 - 2.0));
  CHECK(Expr::parse("x1 + x2 + x3").eval(1, 2, 3, 0) == 6.0);
  CHECK(Expr::parse("tanh(x) + asinh(x) + abs(-x) + cosh(0) + sinh(0) + tan(0) + log(e)").eval(0.3, 0, 0, 0) ==
        doctest::Approx(std::tanh(0.3) + std::asinh(0.3) + 0.3 + 1.0 + 1.0));
  CHECK(f.depends_on(Var::T));
  CHECK_FALSE(Expr::parse("x*y").depends_on(Var::T));
  CHECK(Expr::parse("3*0 + 2").is_constant());
}

TEST_CASE("expression errors") {
  CHECK_THROWS_AS(Expr::parse("1 +"), duhamel::ConfigError);
  CHECK_THROWS_AS(Expr::parse("foo(x)"), duhamel::ConfigError);
  CHECK_THROWS_AS(Expr::parse("w + 1"), duhamel::ConfigError);
  CHECK_THROWS_AS(Expr::parse("(x"), duhamel::ConfigError);
  CHECK_THROWS_AS(Expr::parse("x").constant_value(), duhamel::ConfigError);
}

TEST_CASE("symbolic derivatives agree with finite differences") {
  const char* cases[] = {"sin(x)*cos(y)*exp(-t)", "x^3 - 2*x*y + z", "log(1 + x^2)/(2 + cos(t))",
                         "sqrt(1 + x^2 + y^2)", "tanh(x*t)", "x^y"};
  for (const char* c : cases) {
    CAPTURE(c);
    const Expr e = Expr::parse(c);
    const double p[4] = {0.7, 1.3, 0.4, 0.9};
    for (int v = 0; v < 4; ++v) {
      const Expr d = e.derivative(static_cast<Var>(v));
      double a[4] = {p[0], p[1], p[2], p[3]}, b[4] = {p[0], p[1], p[2], p[3]};
      const double h = 1e-5;
      a[v] += h;
      b[v] -= h;
      const double fd = (e.eval(a[0], a[1], a[2], a[3]) - e.eval(b[0], b[1], b[2], b[3])) / (2 * h);
      CHECK(d.eval(p[0], p[1], p[2], p[3]) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("expression algebra and printing") {
  const Expr x = Expr::variable(Var::X);
  const Expr e = pow(x, Expr::constant(2)) * exp(-x) / (Expr::constant(1) + x);
  CHECK(e.eval(2, 0, 0, 0) == doctest::Approx(4 * std::exp(-2.0) / 3));
  const Expr back = Expr::parse(e.str());
  CHECK(back.eval(1.7, 0, 0, 0) == doctest::Approx(e.eval(1.7, 0, 0, 0)));
}
