#pragma once

#include <optional>
#include <vector>

#include "duhamel/expr.hpp"
#include "duhamel/field.hpp"
#include "duhamel/series.hpp"

namespace duhamel {

/// A coefficient of the 1D parabolic equation: an expression in (x, t) or
/// snapshots on the problem's x-grid nodes with linear interpolation in t.
class Coefficient {
 public:
  Coefficient(double value = 0.0);  // NOLINT: constants convert implicitly
  static Coefficient expression(Expr e);
  static Coefficient sampled(std::vector<double> times, std::vector<std::vector<double>> values);

  /// Values at the x-grid nodes at time t.
  std::vector<double> sample(const Grid& x_grid, double t) const;
  /// Values at arbitrary abscissae (expressions exactly, samples by
  /// monotone cubic interpolation across the x-grid).
  std::vector<double> sample_at(const Grid& x_grid, double t, std::span<const double> x) const;
  const Expr* expr() const { return sampled_ ? nullptr : &expr_; }

 private:
  Expr expr_;
  bool sampled_ = false;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;
};

/// u_t + A u_xx + a u_x + c u + f = 0 on a 1D free-space x-grid, A < 0.
struct ParabolicProblem {
  Coefficient A = -1.0;
  Coefficient a = 0.0;
  Coefficient c = 0.0;
  Coefficient f = 0.0;
  Grid x_grid;
  double horizon = 1.0;
  ScalarField u_init;
  /// Strict ellipticity: A <= -A_min everywhere sampled.
  double A_min = 1e-12;
  /// Lower limit of the psi integral; default: first x node.
  std::optional<double> x_ref;
  /// Padding of the y-grid the reduced problem is solved on (>= 2).
  double padding = 2.0;

  void validate() const;
};

/// y = psi(t, x) per t-node, psi_x = sqrt(-1/A).
struct CoordinateMap {
  std::vector<double> t_nodes;
  std::vector<std::vector<double>> psi;    // [t][x node]
  std::vector<std::vector<double>> psi_x;  // [t][x node]
};

/// v_t - v_yy + Q v + g = 0 on a uniform y-grid, with u = e^{-rho} v.
struct NormalizedProblem {
  Grid x_grid;
  Grid y_grid;
  double horizon;
  CoordinateMap map;
  std::vector<std::vector<double>> x_of_y;  // [t][y node] inverse map
  std::vector<std::vector<double>> P;       // [t][y node]
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> Q;
  std::vector<std::vector<double>> g;
  ScalarField v_init;
  /// max |psi(x(y)) - y| over mapped nodes
  double round_trip_error = 0.0;
  /// Nodes (over all t) whose y lies outside that t's mapped range.
  std::size_t clamped_nodes = 0;

  std::size_t time_steps() const { return map.t_nodes.size() - 1; }
};

/// Uniform t-nodes j T / time_steps.
CoordinateMap coordinate_map(const ParabolicProblem& prob, std::size_t time_steps);
NormalizedProblem normalize(const ParabolicProblem& prob, std::size_t time_steps);

/// Series solve with F = -Q and source -g; opts.time_steps must match the
/// normalization.
ScalarTrajectory solve_normalized(const NormalizedProblem& np, const SeriesOptions& opts,
                                  std::optional<SeriesSolution>* detail = nullptr);

/// u(t, x) = e^{-rho} v at y = psi(t, x), by monotone cubic interpolation in
/// y. Times must be t-nodes. Points of psi outside the y-grid take edge
/// values and are counted in *extrapolated.
ScalarTrajectory back_transform(const ScalarTrajectory& v, const NormalizedProblem& np,
                                std::size_t* extrapolated = nullptr);

/// normalize -> solve_normalized -> back_transform
ScalarTrajectory solve_parabolic(const ParabolicProblem& prob, const SeriesOptions& opts);

}  // namespace duhamel
