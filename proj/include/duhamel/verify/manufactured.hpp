#pragma once

#include <string>

#include "duhamel/expr.hpp"
#include "duhamel/field.hpp"
#include "duhamel/forcing.hpp"

namespace duhamel::verify {

/// A prescribed positive G(x, t) and the data that make it an exact solution
/// of dG/dt = nu Lap G + F G.
struct ManufacturedCase {
  Expr G;
  Expr F;               // (G_t - nu Lap G) / G
  std::vector<Expr> u;  // -2 nu grad G / G, one per dimension
  Expr phi;             // -2 nu log G(., 0)
  Grid grid;
  double horizon;
  double viscosity;
  Forcing forcing;  // F with bounds from dense sampling
  ScalarField G0;

  ScalarField exact_G(double t) const;
  VectorField exact_u(double t) const;
};

/// Throws DomainError naming a witness point if G <= 0 anywhere on the
/// sampled grid x [0, T] box.
ManufacturedCase make_manufactured(const Expr& G, const Grid& grid, double horizon,
                                   double viscosity = 1.0, std::size_t time_samples = 64);

}  // namespace duhamel::verify
