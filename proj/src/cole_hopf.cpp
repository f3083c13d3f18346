#include "duhamel/cole_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duhamel/diff.hpp"

namespace duhamel {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Nearest node index to x0 along axis d and the displacement node - x0.
std::size_t anchor_index(const Grid& g, std::size_t d, double x0, double* disp) {
  const double h = g.spacing(d);
  const long n = static_cast<long>(g.points(d));
  long i = std::lround((x0 - g.origin()[d]) / h);
  if (!g.periodic()) i = std::clamp<long>(i, 0, n - 1);
  *disp = g.origin()[d] + static_cast<double>(i) * h - x0;
  if (g.periodic()) i = ((i % n) + n) % n;
  return static_cast<std::size_t>(i);
}

// C[p] = int from the anchor index to p's index along axis d, on p's line.
std::vector<double> leg_integrals(const VectorField& u0, std::size_t d, std::size_t anchor) {
  const Grid& g = u0.grid();
  const auto comp = u0.component(d);
  const auto du = derivative(u0.component_field(d), d);
  const double h = g.spacing(d);
  const std::size_t n = g.points(d);
  std::vector<double> out(g.size());
  for_each_line(g, d, [&](std::size_t first, std::size_t s) {
    auto at = [&](std::size_t i) { return comp[first + i * s]; };
    std::vector<double> trap(n, 0.0);
    for (std::size_t i = anchor + 1; i < n; ++i) trap[i] = trap[i - 1] + 0.5 * h * (at(i - 1) + at(i));
    for (std::size_t i = anchor; i-- > 0;) trap[i] = trap[i + 1] - 0.5 * h * (at(i) + at(i + 1));
    const double da = du[first + anchor * s];
    // the endpoint correction has the same form for legs in either direction
    for (std::size_t i = 0; i < n; ++i) {
      out[first + i * s] = trap[i] - h * h / 12.0 * (du[first + i * s] - da);
    }
  });
  return out;
}

}  // namespace

CurlError::CurlError(double residual, double tolerance)
    : DomainError("initial velocity is not a gradient field: curl residual " + fmt(residual) +
                  " exceeds tolerance " + fmt(tolerance)),
      residual_(residual),
      tolerance_(tolerance) {}

double default_curl_tolerance(const VectorField& u0) {
  const Grid& g = u0.grid();
  double tol = 1e-6 * u0.max_norm() / g.min_spacing();
  if (g.periodic() || g.ndim() < 2) return tol;
  // finite differences: a gradient's curl residual sits below the gap
  // between the 4th- and 2nd-order cross derivatives
  for (std::size_t j = 0; j < g.ndim(); ++j) {
    const auto uj = u0.component(j);
    for (std::size_t i = 0; i < g.ndim(); ++i) {
      if (i == j) continue;
      const auto d4 = derivative(u0.component_field(j), i);
      const std::size_t s = g.stride(i);
      const double inv = 0.5 / g.spacing(i);
      for (std::size_t p = 0; p < g.size(); ++p) {
        if (!interior_node(g, p, kCurlMargin)) continue;
        tol = std::max(tol, std::abs(d4[p] - (uj[p + s] - uj[p - s]) * inv));
      }
    }
  }
  return tol;
}

void NSEProblem::validate() const {
  if (!std::isfinite(a)) throw ConfigError("nse: anchor value a must be finite");
  if (!(speed_bound >= 0.0) || !std::isfinite(speed_bound)) {
    throw ConfigError("nse: speed bound c must be >= 0");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("nse: horizon must be > 0");
  const double un = u0.max_norm();
  if (un > speed_bound * (1.0 + 1e-12)) {
    throw ConfigError("nse: ||u0||_inf = " + fmt(un) + " exceeds speed bound c = " +
                      fmt(speed_bound));
  }
  const double tol = curl_tolerance.value_or(default_curl_tolerance(u0));
  const double curl = curl_residual(u0, kCurlMargin);
  if (curl > tol) throw CurlError(curl, tol);
}

PotentialResult potential_with_diagnostics(const VectorField& u0, const Point& x0, double a,
                                           std::optional<double> curl_tolerance) {
  if (!std::isfinite(a)) throw ConfigError("potential: a must be finite");
  const Grid& g = u0.grid();
  const double tol = curl_tolerance.value_or(default_curl_tolerance(u0));
  const double curl = curl_residual(u0, kCurlMargin);
  if (curl > tol) throw CurlError(curl, tol);

  const std::size_t nd = g.ndim();
  std::array<std::size_t, 3> anchor{};
  std::array<double, 3> disp{};
  for (std::size_t d = 0; d < nd; ++d) anchor[d] = anchor_index(g, d, x0[d], &disp[d]);
  // first-order shift from x0 to the anchor node
  const std::size_t anchor_flat = g.flatten(anchor);
  double base = a;
  for (std::size_t d = 0; d < nd; ++d) base += u0.component(d)[anchor_flat] * disp[d];

  std::vector<std::vector<double>> legs;
  for (std::size_t d = 0; d < nd; ++d) legs.push_back(leg_integrals(u0, d, anchor[d]));

  std::vector<double> fwd(g.size()), rev(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto idx = g.unflatten(p);
    // forward: axis 0 from the anchor, then axis 1, then axis 2
    double s = base;
    auto node = anchor;
    for (std::size_t d = 0; d < nd; ++d) {
      node[d] = idx[d];
      s += legs[d][g.flatten(node)];
    }
    fwd[p] = s;
    double r = base;
    node = anchor;
    for (std::size_t d = nd; d-- > 0;) {
      node[d] = idx[d];
      r += legs[d][g.flatten(node)];
    }
    rev[p] = r;
  }
  PotentialResult out{ScalarField(g, fwd), max_abs_diff(fwd, rev), curl};
  return out;
}

ScalarField potential_from_velocity(const VectorField& u0, const Point& x0, double a,
                                    std::optional<double> curl_tolerance) {
  return potential_with_diagnostics(u0, x0, a, curl_tolerance).phi;
}

ScalarField initial_G(const ScalarField& phi, double viscosity) {
  if (!(viscosity > 0.0)) throw ConfigError("initial_G: viscosity must be > 0");
  std::vector<double> v(phi.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double e = phi[i] / viscosity;
    if (e < kMinPotential) {
      throw DomainError("initial_G: potential " + fmt(phi[i]) + " at node " + std::to_string(i) +
                        " overflows e^{-phi/2}");
    }
    v[i] = std::exp(-0.5 * e);
  }
  return {phi.grid(), std::move(v)};
}

Forcing forcing_from_pressure(const Forcing& p_minus_f, double viscosity) {
  if (!(viscosity > 0.0)) throw ConfigError("forcing: viscosity must be > 0");
  return p_minus_f.scaled(0.5 / viscosity);
}

Forcing forcing_from_pressure(const Forcing& p_minus_f, const Grid& grid, double horizon,
                              double viscosity) {
  const Forcing b = p_minus_f.has_bounds() ? p_minus_f : p_minus_f.estimate_bounds(grid, horizon, 64);
  return forcing_from_pressure(b, viscosity);
}

VectorTrajectory velocity_from_G(const ScalarTrajectory& G, double viscosity,
                                 const FloorReport* floor) {
  std::vector<VectorField> us;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const auto& g = G[i];
    const double floor_v = std::max(kPositivityFloorAbs, kPositivityFloorRel * g.max());
    if (!(g.min() > floor_v)) {
      std::string msg = "velocity_from_G: min G = " + fmt(g.min()) + " at t = " + fmt(G.time(i)) +
                        " below positivity floor " + fmt(floor_v);
      if (floor) {
        msg += "; floor check violations " + std::to_string(floor->floor.violations()) +
               ", worst " + fmt(floor->floor.max_violation());
      }
      throw NumericalError(msg);
    }
    const auto grad = gradient(g);
    std::vector<std::vector<double>> comps;
    for (std::size_t d = 0; d < grad.ncomp(); ++d) {
      std::vector<double> c(grad.component(d).begin(), grad.component(d).end());
      for (std::size_t p = 0; p < c.size(); ++p) c[p] = -2.0 * viscosity * c[p] / g[p];
      comps.push_back(std::move(c));
    }
    us.emplace_back(g.grid(), std::move(comps));
  }
  return {G.times(), std::move(us)};
}

NSESolution solve_nse(const NSEProblem& prob, const SeriesOptions& opts) {
  prob.validate();
  const double nu = opts.kernel.viscosity;
  auto pot = potential_with_diagnostics(prob.u0, prob.x0, prob.a, prob.curl_tolerance);
  const ScalarField G0 = initial_G(pot.phi, nu);
  const Forcing F = forcing_from_pressure(prob.p_minus_f, prob.u0.grid(), prob.horizon, nu);
  auto series = solve_controlled_heat(G0, F, prob.horizon, opts);
  auto ceiling = ceiling_check(series, G0, F.abs_bound());
  // floor/upper are stated for G0 = e^{-phi/2}; pass phi / nu so that holds
  std::vector<double> scaled(pot.phi.values().begin(), pot.phi.values().end());
  for (double& v : scaled) v /= nu;
  auto floor = floor_check(series, ScalarField(pot.phi.grid(), std::move(scaled)), F);
  auto u = velocity_from_G(series.G, nu, &floor);
  return NSESolution{std::move(pot.phi), pot.path_gap, std::move(series), std::move(u),
                     std::move(ceiling), std::move(floor), F};
}

ScalarTrajectory nse_residual(const VectorTrajectory& u, const Forcing& p_minus_f,
                              double viscosity) {
  if (u.size() < 3) throw ConfigError("nse_residual: needs at least 3 output times");
  const Grid& g = u.grid();
  const std::size_t nd = g.ndim();
  std::vector<double> times;
  std::vector<ScalarField> out;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double t0 = u.time(i - 1), t1 = u.time(i), t2 = u.time(i + 1);
    const double h1 = t1 - t0, h2 = t2 - t1;
    // three-point derivative at t1 on a possibly non-uniform stencil
    const double c0 = -h2 / (h1 * (h1 + h2));
    const double c1 = (h2 - h1) / (h1 * h2);
    const double c2 = h1 / (h2 * (h1 + h2));
    const auto q = p_minus_f.sample_field(g, t1);
    const auto dq = gradient(q);
    std::vector<double> worst(g.size(), 0.0);
    for (std::size_t j = 0; j < nd; ++j) {
      const auto uj = u[i].component_field(j);
      const auto lap = laplacian(uj);
      std::vector<std::vector<double>> duj(nd);
      for (std::size_t k = 0; k < nd; ++k) duj[k] = derivative(uj, k);
      for (std::size_t p = 0; p < g.size(); ++p) {
        double r = c0 * u[i - 1].component(j)[p] + c1 * u[i].component(j)[p] +
                   c2 * u[i + 1].component(j)[p];
        for (std::size_t k = 0; k < nd; ++k) r += u[i].component(k)[p] * duj[k][p];
        r += -viscosity * lap[p] + dq.component(j)[p];
        worst[p] = std::max(worst[p], std::abs(r));
      }
    }
    for (std::size_t p = 0; p < g.size(); ++p) {
      if (!interior_node(g, p, 2)) worst[p] = 0.0;
    }
    times.push_back(t1);
    out.emplace_back(g, std::move(worst));
  }
  return {std::move(times), std::move(out)};
}

double max_residual(const ScalarTrajectory& r) {
  double m = 0.0;
  for (const auto& s : r.snapshots()) m = std::max(m, s.max_abs());
  return m;
}

double worst_case_upper_bound(double r, double t, double c, double a) {
  if (!(t > 0.0)) throw DomainError("worst_case_upper_bound: t must be > 0");
  if (!(r >= 0.0)) throw DomainError("worst_case_upper_bound: r must be >= 0");
  if (!(c > 0.0)) throw DomainError("worst_case_upper_bound: c must be > 0");
  const double s = r + c * t;
  return std::exp(t * c * c / 4.0 + (r * c - a) / 2.0) * (s * s / t + 2.0);
}

}  // namespace duhamel
