#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "duhamel/grid.hpp"

namespace duhamel {

/// Expression variables: spatial coordinates and time.
enum class Var { X = 0, Y = 1, Z = 2, T = 3 };

/// Immutable expression tree over {+, -, *, /, ^, sin, cos, tan, exp, log,
/// sqrt, tanh, sinh, cosh, asinh, abs}, numeric constants, pi, e, the
/// coordinates x y z (aliases x1 x2 x3) and t. Supports exact symbolic
/// differentiation.
class Expr {
 public:
  Expr();  // constant 0
  static Expr parse(std::string_view text);
  static Expr constant(double v);
  static Expr variable(Var v);

  double eval(double x, double y, double z, double t) const;
  double operator()(const Point& p, double t) const { return eval(p[0], p[1], p[2], t); }

  Expr derivative(Var v) const;
  bool depends_on(Var v) const;
  bool is_constant() const;
  /// Value of a constant expression; throws otherwise.
  double constant_value() const;

  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, const Expr& b);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sqrt(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace duhamel
