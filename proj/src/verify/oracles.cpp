#include "duhamel/verify/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace duhamel::verify {
namespace {

constexpr double kPi = std::numbers::pi;

// Fourier second-derivative matrix for n (even) nodes on a period L.
Eigen::MatrixXd fourier_d2(std::size_t n, double L) {
  if (n % 2 != 0) throw ConfigError("fd_controlled_heat: points per axis must be even");
  const double h = 2.0 * kPi / static_cast<double>(n);
  const double scale = (2.0 * kPi / L) * (2.0 * kPi / L);
  Eigen::MatrixXd D(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        D(i, j) = -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const long d = static_cast<long>(i) - static_cast<long>(j);
        const double s = std::sin(static_cast<double>(d) * h / 2.0);
        D(i, j) = -((d % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
      }
    }
  }
  return D * scale;
}

Eigen::MatrixXd laplacian_matrix(const Grid& g) {
  if (!g.periodic()) throw ConfigError("fd_controlled_heat: grid must be periodic");
  if (g.ndim() == 1) return fourier_d2(g.points(0), g.extent(0));
  if (g.ndim() != 2) throw ConfigError("fd_controlled_heat: 1D or 2D only");
  const std::size_t nx = g.points(0), ny = g.points(1);
  const Eigen::MatrixXd Dx = fourier_d2(nx, g.extent(0));
  const Eigen::MatrixXd Dy = fourier_d2(ny, g.extent(1));
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nx * ny, nx * ny);
  // row-major: flat = i * ny + j
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t r = i * ny + j;
      for (std::size_t k = 0; k < nx; ++k) L(r, k * ny + j) += Dx(i, k);
      for (std::size_t k = 0; k < ny; ++k) L(r, i * ny + k) += Dy(j, k);
    }
  }
  return L;
}

Eigen::VectorXd forcing_vector(const Forcing& F, const Grid& g, double t) {
  const auto v = F.sample(g, t);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

ScalarTrajectory fd_controlled_heat(const ScalarField& G0, const Forcing& F, double horizon,
                                    double dt, double viscosity) {
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ConfigError("fd_controlled_heat: T and dt must be > 0");
  const Grid& g = G0.grid();
  const Eigen::MatrixXd L = viscosity * laplacian_matrix(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  const double h = horizon / static_cast<double>(steps);

  Eigen::VectorXd G = Eigen::Map<const Eigen::VectorXd>(G0.values().data(), n);
  std::vector<double> times{0.0};
  std::vector<ScalarField> snaps{G0};
  const bool const_F = F.is_constant() || (F.kind() == Forcing::Kind::SampledStack && F.stack().size() == 1) ||
                       (F.expression_ptr() && !F.expression_ptr()->depends_on(Var::T));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd f_prev = forcing_vector(F, g, 0.0);
  if (const_F) lu.compute(I - 0.5 * h * (L + Eigen::MatrixXd(f_prev.asDiagonal())));
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = s == steps ? horizon : h * static_cast<double>(s);
    const Eigen::VectorXd f_next = const_F ? f_prev : forcing_vector(F, g, t);
    const Eigen::VectorXd rhs = G + 0.5 * h * (L * G + f_prev.cwiseProduct(G));
    if (!const_F) lu.compute(I - 0.5 * h * (L + Eigen::MatrixXd(f_next.asDiagonal())));
    G = lu.solve(rhs);
    f_prev = f_next;
    times.push_back(t);
    snaps.emplace_back(g, std::vector<double>(G.data(), G.data() + n));
  }
  return {std::move(times), std::move(snaps)};
}

double burgers_max_dt(const Grid& grid, double umax, double viscosity) {
  const double h = grid.spacing(0);
  const double diff = 0.5 * h * h / viscosity;
  const double adv = umax > 0.0 ? h / umax : diff;
  return std::min(diff, adv);
}

ScalarTrajectory fd_burgers(const ScalarField& u0, double horizon, double dt, double viscosity) {
  const Grid& g = u0.grid();
  if (g.ndim() != 1 || !g.periodic()) throw ConfigError("fd_burgers: periodic 1D grid required");
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ConfigError("fd_burgers: T and dt must be > 0");
  const std::size_t n = g.size();
  const double h = g.spacing(0);
  std::vector<double> u(u0.values().begin(), u0.values().end());
  const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  const double k = horizon / static_cast<double>(steps);
  std::vector<double> times{0.0};
  std::vector<ScalarField> snaps{u0};
  std::vector<double> flux(n), next(n);
  for (std::size_t s = 1; s <= steps; ++s) {
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    const double limit = burgers_max_dt(g, umax, viscosity);
    if (k > limit * (1.0 + 1e-12)) {
      throw ConfigError("fd_burgers: dt = " + std::to_string(k) + " violates the stability limit " +
                        std::to_string(limit));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double a = u[i], b = u[(i + 1) % n];
      flux[i] = 0.25 * (a * a + b * b);  // F_{i+1/2}
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
      next[i] = u[i] - k / h * (flux[i] - flux[im]) +
                viscosity * k / (h * h) * (u[ip] - 2.0 * u[i] + u[im]);
    }
    std::swap(u, next);
    times.push_back(s == steps ? horizon : k * static_cast<double>(s));
    snaps.emplace_back(g, u);
  }
  return {std::move(times), std::move(snaps)};
}

ScalarField heat_dft(const ScalarField& f, double t, double viscosity) {
  const Grid& g = f.grid();
  if (g.ndim() != 1) throw ConfigError("heat_dft: 1D only");
  const std::size_t n = g.size();
  const double L = g.extent(0);
  std::vector<std::complex<double>> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      s += f[j] * std::polar(1.0, ang);
    }
    c[k] = s / static_cast<double>(n);
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      // symmetric mode index; the Nyquist mode (even n) is kept as a cosine
      const long m = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
      const double kw = 2.0 * kPi * static_cast<double>(m) / L;
      const double ang = 2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      s += c[k] * std::exp(-viscosity * kw * kw * t) * std::polar(1.0, ang);
    }
    out[j] = s.real();
  }
  return {g, std::move(out)};
}

double burgers_exact_G(double x, double t) { return 1.0 + 0.5 * std::exp(-t) * std::cos(x); }

double burgers_exact_u(double x, double t) {
  const double e = std::exp(-t);
  return e * std::sin(x) / (1.0 + 0.5 * e * std::cos(x));
}

}  // namespace duhamel::verify
