#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "duhamel/field.hpp"

namespace duhamel {

enum class KernelMethod { SpectralPeriodic, DirectQuadrature };

struct KernelOptions {
  /// Diffusion coefficient nu in K = (4 pi nu t)^{-n/2} exp(-|x|^2 / (4 nu t)).
  double viscosity = 1.0;
  /// Default: spectral on periodic grids, direct quadrature otherwise.
  std::optional<KernelMethod> method;
};

/// Metadata of one kernel application.
struct KernelApplication {
  double t = 0.0;
  KernelMethod method = KernelMethod::SpectralPeriodic;
  /// Kernel support narrower than a grid cell on some axis; that axis was
  /// left unsmoothed.
  bool under_resolved = false;
};

/// How the gradient of a convolution is formed.
enum class GradPath {
  Default,            // spectral differentiation on periodic grids, kernel gradient otherwise
  KernelGradient,     // (grad K) * f by direct quadrature
  DifferentiateAfter  // grid derivative of K * f
};

/// (4 pi nu t)^{-n/2} exp(-|x|^2 / (4 nu t)), n = x.size(). Throws DomainError for t <= 0.
double kernel_eval(std::span<const double> x, double t, double viscosity = 1.0);

/// Taps for direct quadrature along one axis, ordered for simd correlate():
/// out[i] = sum_k taps[k] * f[i + k - radius]. Gaussian taps are normalised
/// to unit sum; derivative taps are -x/(2 nu t) times the Gaussian taps.
struct AxisTaps {
  std::size_t radius = 0;
  std::vector<double> taps;
  bool identity = false;
};
AxisTaps gaussian_taps(double spacing, double nu_t, bool derivative);

class HeatKernel {
 public:
  explicit HeatKernel(Grid grid, KernelOptions opts = {});

  const Grid& grid() const noexcept { return grid_; }
  KernelMethod method() const noexcept { return method_; }
  double viscosity() const noexcept { return nu_; }

  ScalarField apply(const ScalarField& f, double t, KernelApplication* info = nullptr) const;
  /// Raw-array form of apply() on this kernel's grid.
  std::vector<double> apply_values(std::span<const double> f, double t,
                                   bool* under_resolved = nullptr) const;
  VectorField apply_grad(const ScalarField& f, double t, GradPath path = GradPath::Default) const;

 private:
  std::vector<double> direct(std::span<const double> f, double t, int derivative_axis,
                             bool* under_resolved) const;
  std::vector<double> spectral(std::span<const double> f, double t) const;

  Grid grid_;
  KernelMethod method_;
  double nu_;
};

/// K(., t) * f; t = 0 returns f unchanged.
ScalarField convolve(const ScalarField& f, double t, const KernelOptions& opts = {});
/// grad(K(., t) * f), t > 0.
VectorField convolve_grad(const ScalarField& f, double t, const KernelOptions& opts = {},
                          GradPath path = GradPath::Default);

}  // namespace duhamel
