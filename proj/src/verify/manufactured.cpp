#include "duhamel/verify/manufactured.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace duhamel::verify {

ScalarField ManufacturedCase::exact_G(double t) const {
  return ScalarField::sample(grid, [&](const Point& p) { return G(p, t); });
}

VectorField ManufacturedCase::exact_u(double t) const {
  std::vector<std::vector<double>> comps;
  for (const auto& e : u) {
    std::vector<double> c(grid.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = e(grid.point(k), t);
    comps.push_back(std::move(c));
  }
  return {grid, std::move(comps)};
}

ManufacturedCase make_manufactured(const Expr& G, const Grid& grid, double horizon,
                                   double viscosity, std::size_t time_samples) {
  if (!(horizon > 0.0)) throw ConfigError("manufactured: horizon must be > 0");
  const Grid probe = grid.padded();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const auto nu = Expr::constant(viscosity);
  Expr lap = Expr::constant(0.0);
  std::vector<Expr> u;
  for (std::size_t d = 0; d < grid.ndim(); ++d) {
    const auto v = static_cast<Var>(d);
    const Expr gd = G.derivative(v);
    lap = lap + gd.derivative(v);
    u.push_back(Expr::constant(-2.0 * viscosity) * gd / G);
  }
  const Expr F = (G.derivative(Var::T) - nu * lap) / G;
  for (std::size_t j = 0; j <= time_samples; ++j) {
    const double t = horizon * static_cast<double>(j) / static_cast<double>(time_samples);
    for (std::size_t k = 0; k < probe.size(); ++k) {
      const Point p = probe.point(k);
      const double g = G(p, t);
      if (!(g > 0.0) || !std::isfinite(g)) {
        std::ostringstream os;
        os << "manufactured: G = " << g << " is not positive at (" << p[0] << ", " << p[1]
           << ", " << p[2] << "), t = " << t;
        throw DomainError(os.str());
      }
      const double f = F(p, t);
      if (!std::isfinite(f)) throw DomainError("manufactured: derived F is not finite");
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  }
  // margin for evaluation between sampled instants
  const double pad = 1e-3 * std::max(1.0, hi - lo);
  Forcing forcing = Forcing::expression(F, lo - pad, std::max(hi + pad, 0.0));
  if (F.is_constant()) forcing = Forcing::expression(F);
  const Expr phi = Expr::constant(-2.0 * viscosity) * log(G);
  auto G0 = ScalarField::sample(grid, [&](const Point& p) { return G(p, 0.0); });
  return ManufacturedCase{G, F, std::move(u), phi, grid, horizon, viscosity, std::move(forcing),
                          std::move(G0)};
}

}  // namespace duhamel::verify
