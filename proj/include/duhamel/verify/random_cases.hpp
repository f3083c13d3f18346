#pragma once

#include <cstdint>
#include <random>

#include "duhamel/expr.hpp"
#include "duhamel/forcing.hpp"

namespace duhamel::verify {

using Rng = std::mt19937_64;

/// Trigonometric polynomial c0 + sum_{k=1..modes} a_k cos(k x + theta_k) in x,
/// coefficients uniform in [-1, 1].
Expr random_trig(Rng& rng, std::size_t modes, double c0);

/// F(x, t) = s (c0 + sum a_k cos(k x + theta_k)) (1 + b t), scaled so that
/// |F| <= f_max on [0, horizon]. Declared bounds [-f_max, f_max].
Forcing random_forcing(Rng& rng, double f_max, double horizon, std::size_t modes = 4);

/// phi(x) = a + w.x + sum alpha_j (sqrt(1 + |x - c_j|^2) - sqrt(1 + |c_j|^2))
///        + sum gamma_m (sin(k_m.x + theta_m) - sin theta_m)
/// in ndim variables, scaled so the Lipschitz constant is at most c; phi(0) = a.
Expr random_lipschitz_potential(Rng& rng, std::size_t ndim, double c, double a, double spread = 3.0);

}  // namespace duhamel::verify
