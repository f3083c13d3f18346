#pragma once

// Independent reference solvers. None of these share differencing or time
// marching code with the series solver.

#include "duhamel/field.hpp"
#include "duhamel/forcing.hpp"

namespace duhamel::verify {

/// Crank-Nicolson for dG/dt = nu Lap G + F G on a periodic 1D/2D grid with
/// an even number of points per axis. The Laplacian is the dense Fourier
/// differentiation matrix; the reaction term is treated by the trapezoid
/// rule. Returns G at t = 0, dt, ..., T (the last step shortened if needed).
ScalarTrajectory fd_controlled_heat(const ScalarField& G0, const Forcing& F, double horizon,
                                    double dt, double viscosity = 1.0);

/// Largest stable dt of fd_burgers on this grid for data bounded by umax.
double burgers_max_dt(const Grid& grid, double umax, double viscosity = 1.0);

/// Explicit Euler, conservative central flux for u_t + (u^2/2)_x = nu u_xx
/// on a periodic 1D grid. Throws ConfigError if dt exceeds burgers_max_dt.
ScalarTrajectory fd_burgers(const ScalarField& u0, double horizon, double dt,
                            double viscosity = 1.0);

/// K(., t) * f by a directly summed discrete Fourier series (O(N^2) per
/// axis), periodic 1D grids.
ScalarField heat_dft(const ScalarField& f, double t, double viscosity = 1.0);

/// Burgers fixture: G = 1 + e^{-t} cos(x) / 2, u = -2 G_x / G.
double burgers_exact_G(double x, double t);
double burgers_exact_u(double x, double t);

}  // namespace duhamel::verify
