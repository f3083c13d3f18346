#pragma once

#include <optional>

#include "duhamel/bounds.hpp"
#include "duhamel/field.hpp"
#include "duhamel/forcing.hpp"
#include "duhamel/series.hpp"

namespace duhamel {

/// Irrotational NSE data: du/dt + (u.grad)u = nu Lap u + grad(f - p), u(0) = u0 = grad phi.
/// Pressure enters only through p - f, which is input data.
struct NSEProblem {
  VectorField u0;
  Point x0{};     // anchor: phi(x0) = a
  double a = 0.0;
  Forcing p_minus_f;
  double speed_bound = 1.0;  // c >= ||u0||_inf
  double horizon = 1.0;
  std::optional<double> curl_tolerance;

  void validate() const;
};

/// Thrown when u0 is not a gradient field within tolerance.
class CurlError : public DomainError {
 public:
  CurlError(double residual, double tolerance);
  double residual() const noexcept { return residual_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double residual_;
  double tolerance_;
};

/// 1e-6 ||u0||_inf / min spacing; on free-space grids at least the largest
/// gap between 4th- and 2nd-order cross derivatives of u0.
double default_curl_tolerance(const VectorField& u0);
/// Nodes from the free-space boundary excluded from curl checks (one-sided stencils).
inline constexpr std::size_t kCurlMargin = 2;

struct PotentialResult {
  ScalarField phi;
  /// max |phi(x, y, z order) - phi(z, y, x order)|
  double path_gap = 0.0;
  double curl = 0.0;
};

/// phi(x) = a + int u0 . dx along the axis-aligned staircase from x0
/// (axis 0 first). Legs use the trapezoid rule with the endpoint
/// derivative correction.
PotentialResult potential_with_diagnostics(const VectorField& u0, const Point& x0, double a,
                                           std::optional<double> curl_tolerance = {});
ScalarField potential_from_velocity(const VectorField& u0, const Point& x0, double a,
                                    std::optional<double> curl_tolerance = {});

/// Largest -phi/(2 nu) accepted before e^{-phi/(2 nu)} is rejected.
inline constexpr double kMinPotential = -1400.0;
/// e^{-phi / (2 nu)}.
ScalarField initial_G(const ScalarField& phi, double viscosity = 1.0);

/// F = (p - f) / (2 nu); bounds estimated on grid x [0, horizon] if undeclared.
Forcing forcing_from_pressure(const Forcing& p_minus_f, double viscosity = 1.0);
Forcing forcing_from_pressure(const Forcing& p_minus_f, const Grid& grid, double horizon,
                              double viscosity = 1.0);

inline constexpr double kPositivityFloorAbs = 1e-300;
inline constexpr double kPositivityFloorRel = 1e-12;

/// u = -2 nu grad G / G. Throws NumericalError if min G falls below the floor.
VectorTrajectory velocity_from_G(const ScalarTrajectory& G, double viscosity = 1.0,
                                 const FloorReport* floor = nullptr);

struct NSESolution {
  ScalarField phi;
  double path_gap;
  SeriesSolution series;
  VectorTrajectory u;
  BoundReport ceiling;
  FloorReport floor;
  Forcing F;
};

NSESolution solve_nse(const NSEProblem& prob, const SeriesOptions& opts);

/// |R_j| maxed over components at interior output times, with
/// R = du/dt + (u.grad)u - nu Lap u + grad(p - f). Free-space boundary
/// nodes (2 layers) are zeroed. Needs >= 3 times.
ScalarTrajectory nse_residual(const VectorTrajectory& u, const Forcing& p_minus_f,
                              double viscosity = 1.0);
/// max over the residual trajectory.
double max_residual(const ScalarTrajectory& r);

/// e^{t c^2/4 + (r c - a)/2} ((r + c t)^2 / t + 2), the 3D bound on K*e^{-phi/2}
/// at radius r when |grad phi| <= c and phi(0) = a.
double worst_case_upper_bound(double r, double t, double c, double a);

}  // namespace duhamel
