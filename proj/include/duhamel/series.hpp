#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "duhamel/field.hpp"
#include "duhamel/forcing.hpp"
#include "duhamel/heat_kernel.hpp"

namespace duhamel {

enum class TimeQuadrature {
  /// Composite trapezoid over s-nodes, identity kernel at s = t.
  Trapezoid,
  /// Per Fourier mode, exact integration of e^{-lambda (t-s)} against a local
  /// polynomial interpolant of the integrand. Periodic spectral path only;
  /// the direct path falls back to Trapezoid.
  ExponentialPolynomial
};

struct SeriesOptions {
  std::size_t depth_max = 32;
  double rel_tolerance = 1e-13;
  std::size_t time_steps = 32;
  /// Subset of the s-grid {j T / time_steps}; empty means every node.
  /// Entries are matched to the nearest node within 1e-9 relative.
  std::vector<double> output_times;
  TimeQuadrature quadrature = TimeQuadrature::ExponentialPolynomial;
  /// Interpolant degree for ExponentialPolynomial (clamped to time_steps).
  std::size_t interp_degree = 6;
  KernelOptions kernel;

  static constexpr std::size_t kMaxDepth = 64;
  static constexpr double kMinRelTolerance = 1e-14;
  void validate() const;
};

struct SeriesSolution {
  explicit SeriesSolution(Grid g) : grid(std::move(g)) {}

  Grid grid;  // base (un-padded) grid
  double horizon = 0.0;
  ScalarTrajectory G;
  /// terms[i][k] = T_k at output time i, k = 0..truncation_depth.
  std::vector<std::vector<ScalarField>> terms;
  std::size_t truncation_depth = 0;
  /// Per output time: e^{Mt} (Mt)^{d+1}/(d+1)! max(K*|G0|).
  std::vector<double> estimated_truncation_error;
  bool converged = true;
  bool under_resolved = false;
  /// ||T_d|| / max(||G||, eps) at the last computed order.
  double last_relative_term = 0.0;
  double forcing_bound = 0.0;  // M used in the tail estimate
  TimeQuadrature quadrature_used = TimeQuadrature::Trapezoid;
  KernelOptions kernel;
  /// Index of each output time on the s-grid.
  std::vector<std::size_t> output_nodes;

  /// sum_k terms[i][k] in order k = 0..d.
  ScalarField reconstruct(std::size_t i) const;
};

/// Computes out(s_j) = int_0^{s_j} K(s_j - s) * h(s) ds for every node
/// s_j = j T / N of the uniform s-grid, given h at all N + 1 nodes.
class DuhamelIntegrator {
 public:
  DuhamelIntegrator(Grid grid, double horizon, std::size_t time_steps, TimeQuadrature quadrature,
                    std::size_t interp_degree, KernelOptions kernel);
  ~DuhamelIntegrator();
  DuhamelIntegrator(const DuhamelIntegrator&) = delete;
  DuhamelIntegrator& operator=(const DuhamelIntegrator&) = delete;

  const Grid& grid() const noexcept { return grid_; }
  std::size_t nodes() const noexcept { return steps_ + 1; }
  double ds() const noexcept { return ds_; }
  double node_time(std::size_t j) const;
  TimeQuadrature quadrature() const noexcept { return quad_; }
  bool under_resolved() const noexcept { return under_resolved_; }
  const HeatKernel& kernel() const noexcept { return kernel_; }

  // vanish_order m > 0 declares h(s) = O(s^m) with h(0) = 0; the direct path then
  // weights its first panel by ds/(m+1), exact for c s^m (the spectral path ignores it).
  std::vector<std::vector<double>> integrate(const std::vector<std::vector<double>>& h,
                                             std::size_t vanish_order = 0) const;

 private:
  std::vector<std::vector<double>> integrate_spectral(
      const std::vector<std::vector<double>>& h) const;
  std::vector<std::vector<double>> integrate_direct(const std::vector<std::vector<double>>& h,
                                                    std::size_t vanish_order) const;

  Grid grid_;
  double horizon_;
  std::size_t steps_;
  double ds_;
  TimeQuadrature quad_;
  HeatKernel kernel_;
  bool under_resolved_ = false;
  struct SpectralWeights;
  SpectralWeights* weights_ = nullptr;
};

/// Moments int_0^1 e^{-z(1-u)} u^q du, q = 0..qmax, for z >= 0.
std::vector<long double> exp_moments(long double z, std::size_t qmax);

/// T_{k+1} from T_k on the uniform s-grid {j T / N}.
ScalarTrajectory duhamel_step(const ScalarTrajectory& term, const Forcing& F,
                              const SeriesOptions& opts);

/// Series solution of dG/dt = nu Lap G + F G (+ S) with G(0) = G0.
SeriesSolution solve_controlled_heat(const ScalarField& G0, const Forcing& F, double horizon,
                                     const SeriesOptions& opts);
/// As above with an additive source S(x, t) folded into T_0:
/// T_0 = K*G0 + int_0^t K(t-s) * S(s) ds.
SeriesSolution solve_controlled_heat(const ScalarField& G0, const Forcing& F,
                                     const Forcing& source, double horizon,
                                     const SeriesOptions& opts);

/// e^{Mt} (Mt)^{d+1} / (d+1)!
double tail_factor(double M, double t, std::size_t depth);

}  // namespace duhamel
