#include "duhamel/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "duhamel/diff.hpp"
#include "duhamel/parallel.hpp"
#include "duhamel/simd/kernels.hpp"
#include "duhamel/spectral.hpp"

namespace duhamel {
namespace {

// Gaussian support cut at 8 sqrt(2 nu t): tail mass below 1e-14.
constexpr double kSupportSigmas = 8.0;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("heat kernel: time must be >= 0");
}

}  // namespace

double kernel_eval(std::span<const double> x, double t, double viscosity) {
  if (!(t > 0.0)) throw DomainError("kernel_eval: t must be > 0");
  if (!(viscosity > 0.0)) throw DomainError("kernel_eval: viscosity must be > 0");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double nt = viscosity * t;
  return std::pow(4.0 * std::numbers::pi * nt, -0.5 * static_cast<double>(x.size())) *
         std::exp(-r2 / (4.0 * nt));
}

AxisTaps gaussian_taps(double spacing, double nu_t, bool derivative) {
  AxisTaps out;
  const double width = kSupportSigmas * std::sqrt(2.0 * nu_t);
  if (nu_t <= 0.0 || width < spacing) {
    out.identity = true;
    return out;
  }
  out.radius = static_cast<std::size_t>(std::ceil(width / spacing));
  const std::size_t r = out.radius;
  std::vector<double> g(2 * r + 1);
  double total = 0.0;
  for (std::size_t k = 0; k <= 2 * r; ++k) {
    const double x = (static_cast<double>(k) - static_cast<double>(r)) * spacing;
    g[k] = std::exp(-x * x / (4.0 * nu_t));
    total += g[k];
  }
  out.taps.resize(g.size());
  for (std::size_t k = 0; k <= 2 * r; ++k) {
    const double w = g[k] / total;
    if (derivative) {
      // tap k multiplies f at offset m = k - r, i.e. K'(x_i - x_{i+m}) = K'(-m h)
      const double x = -(static_cast<double>(k) - static_cast<double>(r)) * spacing;
      out.taps[k] = -x / (2.0 * nu_t) * w;
    } else {
      out.taps[k] = w;
    }
  }
  return out;
}

HeatKernel::HeatKernel(Grid grid, KernelOptions opts)
    : grid_(std::move(grid)),
      method_(opts.method.value_or(grid_.periodic() ? KernelMethod::SpectralPeriodic
                                                    : KernelMethod::DirectQuadrature)),
      nu_(opts.viscosity) {
  if (!(nu_ > 0.0) || !std::isfinite(nu_)) throw ConfigError("heat kernel: viscosity must be > 0");
  if (method_ == KernelMethod::SpectralPeriodic && !grid_.periodic()) {
    throw ConfigError("heat kernel: spectral method requires a periodic grid");
  }
}

std::vector<double> HeatKernel::spectral(std::span<const double> f, double t) const {
  const auto sp = Spectral::for_grid(grid_);
  std::vector<double> hat(2 * sp->modes());
  sp->forward(f, hat);
  const auto k2 = sp->k_squared();
  std::vector<double> decay(sp->modes());
  for (std::size_t m = 0; m < decay.size(); ++m) decay[m] = std::exp(-nu_ * k2[m] * t);
  simd::kernels().cscale(decay.data(), hat.data(), sp->modes());
  std::vector<double> out(grid_.size());
  sp->inverse(hat, out);
  return out;
}

std::vector<double> HeatKernel::direct(std::span<const double> f, double t, int derivative_axis,
                                       bool* under_resolved) const {
  std::vector<double> cur(f.begin(), f.end());
  std::vector<double> next(cur.size());
  const auto& kt = simd::kernels();
  for (std::size_t d = 0; d < grid_.ndim(); ++d) {
    const bool deriv = static_cast<int>(d) == derivative_axis;
    const AxisTaps taps = gaussian_taps(grid_.spacing(d), nu_ * t, deriv);
    if (taps.identity) {
      if (under_resolved) *under_resolved = true;
      if (deriv) {
        cur = derivative(ScalarField(grid_, cur), d);
      }
      continue;
    }
    const std::size_t n = grid_.points(d);
    const std::size_t r = taps.radius;
    const bool wrap = grid_.periodic();
    std::vector<std::size_t> starts;
    for_each_line(grid_, d, [&](std::size_t first, std::size_t) { starts.push_back(first); });
    const std::size_t s = grid_.stride(d);
    parallel_for(starts.size(), [&](std::size_t li) {
      const std::size_t first = starts[li];
      std::vector<double> ext(n + 2 * r);
      std::vector<double> line(n);
      for (std::size_t j = 0; j < ext.size(); ++j) {
        const long src = static_cast<long>(j) - static_cast<long>(r);
        std::size_t idx;
        if (wrap) {
          const long nn = static_cast<long>(n);
          idx = static_cast<std::size_t>(((src % nn) + nn) % nn);
        } else {
          idx = static_cast<std::size_t>(std::clamp<long>(src, 0, static_cast<long>(n) - 1));
        }
        ext[j] = cur[first + idx * s];
      }
      kt.correlate(ext.data(), taps.taps.data(), taps.taps.size(), line.data(), n);
      for (std::size_t i = 0; i < n; ++i) next[first + i * s] = line[i];
    });
    std::swap(cur, next);
  }
  return cur;
}

std::vector<double> HeatKernel::apply_values(std::span<const double> f, double t,
                                             bool* under_resolved) const {
  check_time(t);
  if (f.size() != grid_.size()) throw ConfigError("heat kernel: field size does not match grid");
  if (t == 0.0) return {f.begin(), f.end()};
  if (method_ == KernelMethod::SpectralPeriodic) return spectral(f, t);
  return direct(f, t, -1, under_resolved);
}

ScalarField HeatKernel::apply(const ScalarField& f, double t, KernelApplication* info) const {
  if (!(f.grid() == grid_)) throw ConfigError("heat kernel: field grid does not match kernel grid");
  bool ur = false;
  auto v = apply_values(f.values(), t, &ur);
  if (info) *info = {t, method_, ur};
  return {grid_, std::move(v)};
}

VectorField HeatKernel::apply_grad(const ScalarField& f, double t, GradPath path) const {
  if (!(t > 0.0)) throw DomainError("convolve_grad: t must be > 0");
  if (!(f.grid() == grid_)) throw ConfigError("heat kernel: field grid does not match kernel grid");
  if (path == GradPath::Default) {
    path = method_ == KernelMethod::SpectralPeriodic ? GradPath::DifferentiateAfter
                                                     : GradPath::KernelGradient;
  }
  if (path == GradPath::DifferentiateAfter) return gradient(apply(f, t));
  std::vector<std::vector<double>> comps;
  for (std::size_t d = 0; d < grid_.ndim(); ++d) {
    comps.push_back(direct(f.values(), t, static_cast<int>(d), nullptr));
  }
  return {grid_, std::move(comps)};
}

ScalarField convolve(const ScalarField& f, double t, const KernelOptions& opts) {
  return HeatKernel(f.grid(), opts).apply(f, t);
}

VectorField convolve_grad(const ScalarField& f, double t, const KernelOptions& opts,
                          GradPath path) {
  return HeatKernel(f.grid(), opts).apply_grad(f, t, path);
}

}  // namespace duhamel
