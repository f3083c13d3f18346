#include "duhamel/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duhamel/parallel.hpp"
#include "duhamel/simd/kernels.hpp"
#include "duhamel/spectral.hpp"

namespace duhamel {
namespace {

// Below this z the moment recurrence loses accuracy (error grows like q!/z^q).
constexpr long double kSeriesSwitch = 5.0L;

double max_abs_all(const std::vector<std::vector<double>>& v) {
  double m = 0.0;
  for (const auto& a : v) m = std::max(m, simd::max_abs(a));
  return m;
}

void add_into(std::vector<double>& acc, const std::vector<double>& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

// Coefficients c[q] of prod_{j != i, 0<=j<=p} (u + sigma - j) / (i - j).
std::vector<long double> lagrange_shifted(std::size_t i, std::size_t p, std::size_t sigma) {
  std::vector<long double> c{1.0L};
  for (std::size_t j = 0; j <= p; ++j) {
    if (j == i) continue;
    const long double shift = static_cast<long double>(sigma) - static_cast<long double>(j);
    const long double denom = static_cast<long double>(i) - static_cast<long double>(j);
    std::vector<long double> next(c.size() + 1, 0.0L);
    for (std::size_t q = 0; q < c.size(); ++q) {
      next[q + 1] += c[q] / denom;
      next[q] += c[q] * shift / denom;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

void SeriesOptions::validate() const {
  if (depth_max > kMaxDepth) throw ConfigError("series: depth_max must be <= 64");
  if (!(rel_tolerance >= kMinRelTolerance) || !std::isfinite(rel_tolerance)) {
    throw ConfigError("series: rel_tolerance must be >= 1e-14");
  }
  if (time_steps < 1) throw ConfigError("series: time_steps must be >= 1");
  if (interp_degree < 1) throw ConfigError("series: interp_degree must be >= 1");
  if (!(kernel.viscosity > 0.0)) throw ConfigError("series: viscosity must be > 0");
}

std::vector<long double> exp_moments(long double z, std::size_t qmax) {
  std::vector<long double> mu(qmax + 1);
  if (z <= kSeriesSwitch) {
    for (std::size_t q = 0; q <= qmax; ++q) {
      long double term = 1.0L / static_cast<long double>(q + 1);
      long double s = term;
      for (std::size_t m = 0; m < 200; ++m) {
        term *= -z / static_cast<long double>(q + m + 2);
        s += term;
        if (std::fabs(term) < 1e-22L * std::fabs(s)) break;
      }
      mu[q] = s;
    }
  } else {
    mu[0] = -std::expm1(-z) / z;
    for (std::size_t q = 1; q <= qmax; ++q) {
      mu[q] = (1.0L - static_cast<long double>(q) * mu[q - 1]) / z;
    }
  }
  return mu;
}

double tail_factor(double M, double t, std::size_t depth) {
  const double x = M * t;
  double p = std::exp(x);
  for (std::size_t i = 1; i <= depth + 1; ++i) p *= x / static_cast<double>(i);
  return p;
}

ScalarField SeriesSolution::reconstruct(std::size_t i) const {
  const auto& stack = terms.at(i);
  std::vector<double> acc(stack.front().values().begin(), stack.front().values().end());
  for (std::size_t k = 1; k < stack.size(); ++k) {
    const auto v = stack[k].values();
    for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += v[n];
  }
  return {grid, std::move(acc)};
}

// ---------------------------------------------------------------------------

struct DuhamelIntegrator::SpectralWeights {
  std::size_t p = 1;
  std::size_t modes = 0;
  std::vector<double> decay;                       // e^{-lambda ds}
  std::vector<std::vector<std::vector<double>>> w;  // [sigma][i][mode]
};

DuhamelIntegrator::DuhamelIntegrator(Grid grid, double horizon, std::size_t time_steps,
                                     TimeQuadrature quadrature, std::size_t interp_degree,
                                     KernelOptions kernel)
    : grid_(std::move(grid)),
      horizon_(horizon),
      steps_(time_steps),
      ds_(horizon / static_cast<double>(time_steps)),
      quad_(quadrature),
      kernel_(grid_, kernel) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("series: horizon must be > 0");
  if (time_steps < 1) throw ConfigError("series: time_steps must be >= 1");
  if (kernel_.method() != KernelMethod::SpectralPeriodic) {
    quad_ = TimeQuadrature::Trapezoid;
    for (std::size_t d = 0; d < grid_.ndim(); ++d) {
      if (gaussian_taps(grid_.spacing(d), kernel_.viscosity() * ds_, false).identity) {
        under_resolved_ = true;
      }
    }
    return;
  }
  const auto sp = Spectral::for_grid(grid_);
  auto* sw = new SpectralWeights;
  weights_ = sw;
  sw->modes = sp->modes();
  sw->p = quad_ == TimeQuadrature::Trapezoid ? 1 : std::min(interp_degree, steps_);
  const std::size_t p = sw->p;
  sw->decay.resize(sw->modes);
  const auto k2 = sp->k_squared();
  const double nu = kernel_.viscosity();
  if (quad_ == TimeQuadrature::Trapezoid) {
    sw->w.assign(1, std::vector<std::vector<double>>(2, std::vector<double>(sw->modes)));
    for (std::size_t m = 0; m < sw->modes; ++m) {
      sw->decay[m] = std::exp(-nu * k2[m] * ds_);
      sw->w[0][0][m] = 0.5 * ds_ * sw->decay[m];
      sw->w[0][1][m] = 0.5 * ds_;
    }
    return;
  }
  std::vector<std::vector<std::vector<long double>>> basis(p);
  for (std::size_t sigma = 0; sigma < p; ++sigma) {
    for (std::size_t i = 0; i <= p; ++i) basis[sigma].push_back(lagrange_shifted(i, p, sigma));
  }
  sw->w.assign(p, std::vector<std::vector<double>>(p + 1, std::vector<double>(sw->modes)));
  for (std::size_t m = 0; m < sw->modes; ++m) {
    const long double z = static_cast<long double>(nu * k2[m]) * static_cast<long double>(ds_);
    sw->decay[m] = static_cast<double>(std::exp(-z));
    const auto mu = exp_moments(z, p);
    for (std::size_t sigma = 0; sigma < p; ++sigma) {
      for (std::size_t i = 0; i <= p; ++i) {
        long double acc = 0.0L;
        const auto& c = basis[sigma][i];
        for (std::size_t q = 0; q < c.size(); ++q) acc += c[q] * mu[q];
        sw->w[sigma][i][m] = static_cast<double>(static_cast<long double>(ds_) * acc);
      }
    }
  }
}

DuhamelIntegrator::~DuhamelIntegrator() { delete weights_; }

double DuhamelIntegrator::node_time(std::size_t j) const {
  return j == steps_ ? horizon_ : static_cast<double>(j) * ds_;
}

std::vector<std::vector<double>> DuhamelIntegrator::integrate(
    const std::vector<std::vector<double>>& h, std::size_t vanish_order) const {
  if (h.size() != nodes()) throw ConfigError("series: integrand has wrong number of time nodes");
  for (const auto& v : h) {
    if (v.size() != grid_.size()) throw ConfigError("series: integrand has wrong size");
  }
  return weights_ ? integrate_spectral(h) : integrate_direct(h, vanish_order);
}

std::vector<std::vector<double>> DuhamelIntegrator::integrate_spectral(
    const std::vector<std::vector<double>>& h) const {
  const auto sp = Spectral::for_grid(grid_);
  const SpectralWeights& sw = *weights_;
  const std::size_t n2 = 2 * sw.modes;
  std::vector<std::vector<double>> hat(nodes(), std::vector<double>(n2));
  parallel_for(nodes(), [&](std::size_t j) { sp->forward(h[j], hat[j]); });

  const auto& kt = simd::kernels();
  const std::size_t p = sw.p;
  std::vector<std::vector<double>> acc(nodes(), std::vector<double>(n2, 0.0));
  for (std::size_t q = 0; q < steps_; ++q) {
    const std::size_t half = (p - 1) / 2;
    const std::size_t b = std::min(q > half ? q - half : 0, steps_ - p);
    const std::size_t sigma = q - b;
    auto& a = acc[q + 1];
    a = acc[q];
    kt.cscale(sw.decay.data(), a.data(), sw.modes);
    for (std::size_t i = 0; i <= p; ++i) {
      kt.cscale_acc(sw.w[sigma][i].data(), hat[b + i].data(), a.data(), sw.modes);
    }
  }
  std::vector<std::vector<double>> out(nodes(), std::vector<double>(grid_.size(), 0.0));
  parallel_for(steps_, [&](std::size_t q) { sp->inverse(acc[q + 1], out[q + 1]); });
  return out;
}

std::vector<std::vector<double>> DuhamelIntegrator::integrate_direct(
    const std::vector<std::vector<double>>& h, std::size_t vanish_order) const {
  std::vector<std::vector<double>> out(nodes(), std::vector<double>(grid_.size(), 0.0));
  // Trapezoid gives T_k(ds) ~ (ds/2)^(k-1) ds instead of ds^k/k!, which breaks the
  // termwise envelope at the first nodes; the first panel uses the known s^m shape.
  const double w1 = vanish_order > 0 ? ds_ / static_cast<double>(vanish_order + 1) : 0.5 * ds_;
  parallel_for(steps_, [&](std::size_t jj) {
    const std::size_t j = jj + 1;
    auto& o = out[j];
    for (std::size_t i = vanish_order > 0 ? 1 : 0; i <= j; ++i) {
      double w = (i == 0 || i == j) ? 0.5 * ds_ : ds_;
      if (i == 1) w += w1 - 0.5 * ds_;
      if (i == j) {
        simd::axpy(w, h[i], o);
        continue;
      }
      const double lag = node_time(j) - node_time(i);
      const auto c = kernel_.apply_values(h[i], lag);
      simd::axpy(w, c, o);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> output_nodes(const SeriesOptions& opts, double horizon) {
  const std::size_t n = opts.time_steps;
  std::vector<std::size_t> nodes;
  if (opts.output_times.empty()) {
    for (std::size_t j = 0; j <= n; ++j) nodes.push_back(j);
    return nodes;
  }
  for (double t : opts.output_times) {
    const double x = t / horizon * static_cast<double>(n);
    const double r = std::round(x);
    if (!(r >= 0.0) || r > static_cast<double>(n) || std::abs(x - r) > 1e-9 * std::max(1.0, x)) {
      throw ConfigError("series: output time " + std::to_string(t) + " is not an s-grid node");
    }
    const auto j = static_cast<std::size_t>(r);
    if (!nodes.empty() && j <= nodes.back()) {
      throw ConfigError("series: output times must be strictly increasing");
    }
    nodes.push_back(j);
  }
  return nodes;
}

std::vector<std::vector<double>> sample_nodes(const Forcing& F, const Grid& grid,
                                              const DuhamelIntegrator& integ) {
  std::vector<std::vector<double>> out(integ.nodes());
  for (std::size_t j = 0; j < integ.nodes(); ++j) out[j] = F.sample(grid, integ.node_time(j));
  return out;
}

}  // namespace

ScalarTrajectory duhamel_step(const ScalarTrajectory& term, const Forcing& F,
                              const SeriesOptions& opts) {
  opts.validate();
  const std::size_t n = opts.time_steps;
  if (term.size() != n + 1) {
    throw ConfigError("duhamel_step: trajectory does not match time_steps + 1 nodes");
  }
  const double horizon = term.times().back();
  for (std::size_t j = 0; j <= n; ++j) {
    const double expect = horizon * static_cast<double>(j) / static_cast<double>(n);
    if (std::abs(term.time(j) - expect) > 1e-9 * horizon) {
      throw ConfigError("duhamel_step: trajectory is not on the uniform s-grid");
    }
  }
  const Grid& grid = term.grid();
  DuhamelIntegrator integ(grid, horizon, n, opts.quadrature, opts.interp_degree, opts.kernel);
  const Forcing Fb = F.has_bounds() ? F : F.estimate_bounds(grid, horizon, n);
  std::vector<std::vector<double>> h(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    h[j] = Fb.sample(grid, integ.node_time(j));
    const auto v = term[j].values();
    for (std::size_t k = 0; k < h[j].size(); ++k) h[j][k] *= v[k];
  }
  auto out = integ.integrate(h);
  std::vector<ScalarField> snaps;
  for (auto& v : out) snaps.emplace_back(grid, std::move(v));
  return {term.times(), std::move(snaps)};
}

SeriesSolution solve_controlled_heat(const ScalarField& G0, const Forcing& F, double horizon,
                                     const SeriesOptions& opts) {
  return solve_controlled_heat(G0, F, Forcing(), horizon, opts);
}

SeriesSolution solve_controlled_heat(const ScalarField& G0, const Forcing& F,
                                     const Forcing& source, double horizon,
                                     const SeriesOptions& opts) {
  opts.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("series: horizon must be > 0");
  const Grid& base = G0.grid();
  const Grid work = base.padded();
  const auto out_nodes = output_nodes(opts, horizon);

  DuhamelIntegrator integ(work, horizon, opts.time_steps, opts.quadrature, opts.interp_degree,
                          opts.kernel);
  const std::size_t nn = integ.nodes();
  const Forcing Fb = F.has_bounds() ? F : F.estimate_bounds(base, horizon, opts.time_steps);
  const double M = Fb.abs_bound();

  SeriesSolution sol(base);
  sol.horizon = horizon;
  sol.quadrature_used = integ.quadrature();
  sol.kernel = opts.kernel;
  sol.forcing_bound = M;
  sol.output_nodes = out_nodes;
  sol.under_resolved = integ.under_resolved();

  const ScalarField G0w = extend_clamped(G0, work);
  const HeatKernel& K = integ.kernel();

  // T_0
  std::vector<std::vector<double>> cur(nn);
  parallel_for(nn, [&](std::size_t j) {
    bool ur = false;
    cur[j] = K.apply_values(G0w.values(), integ.node_time(j), &ur);
    if (ur && j > 0) sol.under_resolved = true;
  });
  if (!source.is_zero()) {
    const auto s = integ.integrate(sample_nodes(source, work, integ));
    for (std::size_t j = 0; j < nn; ++j) add_into(cur[j], s[j]);
  }

  auto crop = [&](const std::vector<double>& v) {
    return extend_clamped(ScalarField(work, v), base);
  };
  sol.terms.resize(out_nodes.size());
  auto store = [&](const std::vector<std::vector<double>>& t) {
    for (std::size_t i = 0; i < out_nodes.size(); ++i) {
      sol.terms[i].push_back(crop(t[out_nodes[i]]));
    }
  };
  store(cur);
  std::vector<std::vector<double>> G = cur;

  std::size_t depth = 0;
  bool converged = true;
  if (!Fb.is_zero() && opts.depth_max == 0) converged = false;
  if (!Fb.is_zero() && opts.depth_max > 0) {
    const auto Fs = sample_nodes(Fb, work, integ);
    converged = false;
    std::vector<std::vector<double>> h(nn, std::vector<double>(work.size()));
    for (std::size_t k = 1; k <= opts.depth_max; ++k) {
      parallel_for(nn, [&](std::size_t j) { simd::mul(Fs[j], cur[j], h[j]); });
      auto next = integ.integrate(h, k - 1);
      const double norm = max_abs_all(next);
      if (norm == 0.0) {
        converged = true;
        break;
      }
      for (std::size_t j = 0; j < nn; ++j) add_into(G[j], next[j]);
      store(next);
      cur = std::move(next);
      depth = k;
      sol.last_relative_term =
          norm / std::max(max_abs_all(G), std::numeric_limits<double>::epsilon());
      if (sol.last_relative_term < opts.rel_tolerance) {
        converged = true;
        break;
      }
    }
  }
  sol.truncation_depth = depth;
  sol.converged = converged;

  std::vector<double> times;
  std::vector<ScalarField> snaps;
  for (std::size_t i = 0; i < out_nodes.size(); ++i) {
    const double t = integ.node_time(out_nodes[i]);
    times.push_back(t);
    snaps.push_back(crop(G[out_nodes[i]]));
    std::vector<double> absG0(G0w.values().begin(), G0w.values().end());
    for (double& v : absG0) v = std::abs(v);
    const double kmax = crop(K.apply_values(absG0, t)).max_abs();
    sol.estimated_truncation_error.push_back(tail_factor(M, t, depth) * kmax);
  }
  sol.G = ScalarTrajectory(std::move(times), std::move(snaps));
  return sol;
}

}  // namespace duhamel
