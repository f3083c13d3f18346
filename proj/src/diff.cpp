#include "duhamel/diff.hpp"

#include <algorithm>
#include <cmath>

#include "duhamel/spectral.hpp"

namespace duhamel {

void for_each_line(const Grid& grid, std::size_t axis,
                   const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t stride = grid.stride(axis);
  const std::size_t n = grid.points(axis);
  const std::size_t block = stride * n;
  for (std::size_t outer = 0; outer < grid.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) fn(outer + inner, stride);
  }
}

namespace {

void fd_first(const double* f, std::size_t s, std::size_t n, double h, double* out) {
  auto at = [&](std::size_t i) { return f[i * s]; };
  const double c4 = 1.0 / (12.0 * h);
  const double c2 = 1.0 / (2.0 * h);
  out[0] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * c2;
  out[(n - 1) * s] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * c2;
  out[s] = (at(2) - at(0)) * c2;
  out[(n - 2) * s] = (at(n - 1) - at(n - 3)) * c2;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i * s] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * c4;
  }
}

void fd_second(const double* f, std::size_t s, std::size_t n, double h, double* out) {
  auto at = [&](std::size_t i) { return f[i * s]; };
  const double ih2 = 1.0 / (h * h);
  out[0] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) * ih2;
  out[(n - 1) * s] = (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) * ih2;
  out[s] = (at(0) - 2.0 * at(1) + at(2)) * ih2;
  out[(n - 2) * s] = (at(n - 3) - 2.0 * at(n - 2) + at(n - 1)) * ih2;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i * s] = (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2)) *
                 (ih2 / 12.0);
  }
}

// Multiplies the spectrum by (i k)^order along axis (order 1 or 2).
std::vector<double> spectral_derivative(const ScalarField& f, std::size_t axis, int order) {
  const auto sp = Spectral::for_grid(f.grid());
  std::vector<double> hat(2 * sp->modes());
  sp->forward(f.values(), hat);
  const auto k = order == 1 ? sp->wavenumber_odd(axis) : sp->wavenumber(axis);
  for (std::size_t m = 0; m < sp->modes(); ++m) {
    const double re = hat[2 * m];
    const double im = hat[2 * m + 1];
    if (order == 1) {
      hat[2 * m] = -k[m] * im;
      hat[2 * m + 1] = k[m] * re;
    } else {
      hat[2 * m] = -k[m] * k[m] * re;
      hat[2 * m + 1] = -k[m] * k[m] * im;
    }
  }
  std::vector<double> out(f.size());
  sp->inverse(hat, out);
  return out;
}

std::vector<double> fd_derivative(const ScalarField& f, std::size_t axis, bool second) {
  const Grid& g = f.grid();
  std::vector<double> out(f.size());
  const double h = g.spacing(axis);
  const std::size_t n = g.points(axis);
  const double* src = f.values().data();
  for_each_line(g, axis, [&](std::size_t first, std::size_t s) {
    if (second) {
      fd_second(src + first, s, n, h, out.data() + first);
    } else {
      fd_first(src + first, s, n, h, out.data() + first);
    }
  });
  return out;
}

}  // namespace

std::vector<double> derivative(const ScalarField& f, std::size_t axis) {
  if (axis >= f.grid().ndim()) throw ConfigError("derivative: axis out of range");
  return f.grid().periodic() ? spectral_derivative(f, axis, 1) : fd_derivative(f, axis, false);
}

std::vector<double> second_derivative(const ScalarField& f, std::size_t axis) {
  if (axis >= f.grid().ndim()) throw ConfigError("second_derivative: axis out of range");
  return f.grid().periodic() ? spectral_derivative(f, axis, 2) : fd_derivative(f, axis, true);
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<std::vector<double>> comps;
  comps.reserve(g.ndim());
  if (g.periodic()) {
    const auto sp = Spectral::for_grid(g);
    std::vector<double> hat(2 * sp->modes());
    sp->forward(f.values(), hat);
    std::vector<double> dh(hat.size());
    for (std::size_t d = 0; d < g.ndim(); ++d) {
      const auto k = sp->wavenumber_odd(d);
      for (std::size_t m = 0; m < sp->modes(); ++m) {
        dh[2 * m] = -k[m] * hat[2 * m + 1];
        dh[2 * m + 1] = k[m] * hat[2 * m];
      }
      std::vector<double> out(g.size());
      sp->inverse(dh, out);
      comps.push_back(std::move(out));
    }
  } else {
    for (std::size_t d = 0; d < g.ndim(); ++d) comps.push_back(fd_derivative(f, d, false));
  }
  return {g, std::move(comps)};
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<double> out(g.size(), 0.0);
  if (g.periodic()) {
    const auto sp = Spectral::for_grid(g);
    std::vector<double> hat(2 * sp->modes());
    sp->forward(f.values(), hat);
    const auto k2 = sp->k_squared();
    for (std::size_t m = 0; m < sp->modes(); ++m) {
      hat[2 * m] *= -k2[m];
      hat[2 * m + 1] *= -k2[m];
    }
    sp->inverse(hat, out);
  } else {
    for (std::size_t d = 0; d < g.ndim(); ++d) {
      const auto dd = fd_derivative(f, d, true);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += dd[i];
    }
  }
  return {g, std::move(out)};
}

double curl_residual(const VectorField& u) { return curl_residual(u, 0); }

bool interior_node(const Grid& g, std::size_t flat, std::size_t margin) {
  if (g.periodic() || margin == 0) return true;
  const auto idx = g.unflatten(flat);
  for (std::size_t d = 0; d < g.ndim(); ++d) {
    if (idx[d] < margin || idx[d] + margin >= g.points(d)) return false;
  }
  return true;
}

double curl_residual(const VectorField& u, std::size_t margin) {
  const Grid& g = u.grid();
  if (g.ndim() == 1) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.ndim(); ++i) {
    for (std::size_t j = i + 1; j < g.ndim(); ++j) {
      const auto dj_ui = derivative(u.component_field(i), j);
      const auto di_uj = derivative(u.component_field(j), i);
      for (std::size_t p = 0; p < g.size(); ++p) {
        if (interior_node(g, p, margin)) worst = std::max(worst, std::fabs(di_uj[p] - dj_ui[p]));
      }
    }
  }
  return worst;
}

}  // namespace duhamel
