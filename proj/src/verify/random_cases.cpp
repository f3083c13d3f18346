#include "duhamel/verify/random_cases.hpp"

#include <cmath>
#include <numbers>

namespace duhamel::verify {
namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Expr var(std::size_t d) { return Expr::variable(static_cast<Var>(d)); }

}  // namespace

Expr random_trig(Rng& rng, std::size_t modes, double c0) {
  Expr e = Expr::constant(c0);
  const Expr x = var(0);
  for (std::size_t k = 1; k <= modes; ++k) {
    const double a = uniform(rng, -1.0, 1.0);
    const double th = uniform(rng, 0.0, 2 * std::numbers::pi);
    e = e + Expr::constant(a) * cos(Expr::constant(static_cast<double>(k)) * x + Expr::constant(th));
  }
  return e;
}

Forcing random_forcing(Rng& rng, double f_max, double horizon, std::size_t modes) {
  const double c0 = uniform(rng, -1.0, 1.0);
  double amp = std::abs(c0);
  Expr space = Expr::constant(c0);
  const Expr x = var(0);
  for (std::size_t k = 1; k <= modes; ++k) {
    const double a = uniform(rng, -1.0, 1.0);
    const double th = uniform(rng, 0.0, 2 * std::numbers::pi);
    amp += std::abs(a);
    space = space + Expr::constant(a) * cos(Expr::constant(static_cast<double>(k)) * x + Expr::constant(th));
  }
  const double b = uniform(rng, -1.0, 1.0);
  const double tmax = std::max(1.0, std::abs(1.0 + b * horizon));
  const double s = f_max / (amp * tmax);
  const Expr F = Expr::constant(s) * space * (Expr::constant(1.0) + Expr::constant(b) * Expr::variable(Var::T));
  return Forcing::expression(F, -f_max, f_max);
}

Expr random_lipschitz_potential(Rng& rng, std::size_t ndim, double c, double a, double spread) {
  // each piece is built with unit Lipschitz constant, then weighted
  std::vector<Expr> pieces;
  std::vector<double> weights;

  std::vector<double> w(ndim);
  double wn = 0.0;
  for (auto& v : w) {
    v = uniform(rng, -1.0, 1.0);
    wn += v * v;
  }
  wn = std::sqrt(wn);
  Expr lin = Expr::constant(0.0);
  for (std::size_t d = 0; d < ndim; ++d) lin = lin + Expr::constant(w[d] / wn) * var(d);
  pieces.push_back(lin);

  for (int j = 0; j < 3; ++j) {
    Expr r2 = Expr::constant(1.0);
    double c2 = 1.0;
    for (std::size_t d = 0; d < ndim; ++d) {
      const double cj = uniform(rng, -spread, spread);
      const Expr dx = var(d) - Expr::constant(cj);
      r2 = r2 + dx * dx;
      c2 += cj * cj;
    }
    pieces.push_back(sqrt(r2) - Expr::constant(std::sqrt(c2)));
  }
  for (int m = 0; m < 2; ++m) {
    std::vector<double> k(ndim);
    double kn = 0.0;
    for (auto& v : k) {
      v = uniform(rng, -1.5, 1.5);
      kn += v * v;
    }
    kn = std::sqrt(kn);
    const double th = uniform(rng, 0.0, 2 * std::numbers::pi);
    Expr arg = Expr::constant(th);
    for (std::size_t d = 0; d < ndim; ++d) arg = arg + Expr::constant(k[d]) * var(d);
    // divide by |k| for unit Lipschitz constant
    pieces.push_back(Expr::constant(1.0 / kn) * (sin(arg) - Expr::constant(std::sin(th))));
  }

  double total = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    weights.push_back(uniform(rng, -1.0, 1.0));
    total += std::abs(weights.back());
  }
  Expr phi = Expr::constant(a);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    phi = phi + Expr::constant(c * weights[i] / total) * pieces[i];
  }
  return phi;
}

}  // namespace duhamel::verify
