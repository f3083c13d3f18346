#include "duhamel/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duhamel/diff.hpp"
#include "duhamel/interp.hpp"

namespace duhamel {
namespace {

std::vector<double> x_nodes(const Grid& g) {
  std::vector<double> x(g.points(0));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.coord(0, i);
  return x;
}

// d/dt across t-nodes at fixed spatial index; 2nd order.
std::vector<std::vector<double>> time_derivative(const std::vector<std::vector<double>>& v,
                                                 double dt) {
  const std::size_t n = v.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(v[0].size(), 0.0));
  if (n < 2) return out;
  for (std::size_t k = 0; k < v[0].size(); ++k) {
    if (n == 2) {
      out[0][k] = out[1][k] = (v[1][k] - v[0][k]) / dt;
      continue;
    }
    out[0][k] = (-3.0 * v[0][k] + 4.0 * v[1][k] - v[2][k]) / (2.0 * dt);
    out[n - 1][k] = (3.0 * v[n - 1][k] - 4.0 * v[n - 2][k] + v[n - 3][k]) / (2.0 * dt);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j][k] = (v[j + 1][k] - v[j - 1][k]) / (2.0 * dt);
  }
  return out;
}

double node_time(double horizon, std::size_t j, std::size_t n) {
  return j == n ? horizon : horizon * static_cast<double>(j) / static_cast<double>(n);
}

}  // namespace

Coefficient::Coefficient(double value) : expr_(Expr::constant(value)) {}

Coefficient Coefficient::expression(Expr e) {
  Coefficient c;
  c.expr_ = std::move(e);
  if (c.expr_.depends_on(Var::Y) || c.expr_.depends_on(Var::Z)) {
    throw ConfigError("parabolic coefficient may depend only on x and t");
  }
  return c;
}

Coefficient Coefficient::sampled(std::vector<double> times,
                                 std::vector<std::vector<double>> values) {
  if (times.empty() || times.size() != values.size()) {
    throw ConfigError("parabolic coefficient: times and snapshots differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("parabolic coefficient: times must increase");
    if (values[i].size() != values[0].size()) {
      throw ConfigError("parabolic coefficient: snapshots differ in size");
    }
  }
  Coefficient c;
  c.sampled_ = true;
  c.times_ = std::move(times);
  c.values_ = std::move(values);
  return c;
}

std::vector<double> Coefficient::sample(const Grid& x_grid, double t) const {
  const std::size_t n = x_grid.points(0);
  if (!sampled_) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = expr_.eval(x_grid.coord(0, i), 0.0, 0.0, t);
    return out;
  }
  if (values_[0].size() != n) throw ConfigError("parabolic coefficient: size does not match x-grid");
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return values_.front();
  if (it == times_.end()) return values_.back();
  const std::size_t j = static_cast<std::size_t>(it - times_.begin());
  const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 - w) * values_[j - 1][i] + w * values_[j][i];
  return out;
}

std::vector<double> Coefficient::sample_at(const Grid& x_grid, double t,
                                           std::span<const double> x) const {
  std::vector<double> out(x.size());
  if (!sampled_) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = expr_.eval(x[i], 0.0, 0.0, t);
    return out;
  }
  const Pchip p(x_nodes(x_grid), sample(x_grid, t));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = p(x[i]);
  return out;
}

void ParabolicProblem::validate() const {
  if (x_grid.ndim() != 1 || x_grid.periodic()) {
    throw ConfigError("parabolic: x-grid must be 1D free-space");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("parabolic: horizon must be > 0");
  if (!(u_init.grid() == x_grid)) throw ConfigError("parabolic: initial condition not on x-grid");
  if (!(A_min > 0.0)) throw ConfigError("parabolic: A_min must be > 0");
  if (!(padding >= 2.0)) throw ConfigError("parabolic: padding must be >= 2");
  if (x_ref && (!std::isfinite(*x_ref))) throw ConfigError("parabolic: x_ref must be finite");
}

CoordinateMap coordinate_map(const ParabolicProblem& prob, std::size_t time_steps) {
  prob.validate();
  if (time_steps < 1) throw ConfigError("parabolic: time_steps must be >= 1");
  const Grid& xg = prob.x_grid;
  const double h = xg.spacing(0);
  const auto xs = x_nodes(xg);
  CoordinateMap m;
  for (std::size_t j = 0; j <= time_steps; ++j) {
    const double t = node_time(prob.horizon, j, time_steps);
    const auto A = prob.A.sample(xg, t);
    std::vector<double> px(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (!(A[i] <= -prob.A_min)) {
        std::ostringstream os;
        os << "parabolic: A = " << A[i] << " is not <= -" << prob.A_min << " at x = " << xs[i]
           << ", t = " << t;
        throw DomainError(os.str());
      }
      px[i] = std::sqrt(-1.0 / A[i]);
    }
    auto psi = cumulative_trapezoid(px, h);
    if (prob.x_ref) {
      const double off = Pchip(xs, psi)(*prob.x_ref);
      // beyond the grid, extend linearly with the edge slope
      double shift = off;
      if (*prob.x_ref < xs.front()) shift = (*prob.x_ref - xs.front()) * px.front();
      if (*prob.x_ref > xs.back()) shift = psi.back() + (*prob.x_ref - xs.back()) * px.back();
      for (double& v : psi) v -= shift;
    }
    m.t_nodes.push_back(t);
    m.psi.push_back(std::move(psi));
    m.psi_x.push_back(std::move(px));
  }
  return m;
}

NormalizedProblem normalize(const ParabolicProblem& prob, std::size_t time_steps) {
  CoordinateMap map = coordinate_map(prob, time_steps);
  const Grid& xg = prob.x_grid;
  const std::size_t n = xg.points(0);
  const std::size_t nt = map.t_nodes.size();
  const double dt = prob.horizon / static_cast<double>(time_steps);
  const auto xs = x_nodes(xg);

  // P = psi_t + A psi_xx + a psi_x on the x-grid
  const auto psi_t = time_derivative(map.psi, dt);
  std::vector<std::vector<double>> Px(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = map.t_nodes[j];
    const auto A = prob.A.sample(xg, t);
    const auto a = prob.a.sample(xg, t);
    const auto psi_xx = derivative(ScalarField(xg, map.psi_x[j]), 0);
    Px[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Px[j][i] = psi_t[j][i] + A[i] * psi_xx[i] + a[i] * map.psi_x[j][i];
    }
  }

  double y_lo = map.psi[0].front(), y_hi = map.psi[0].back();
  for (std::size_t j = 0; j < nt; ++j) {
    y_lo = std::min(y_lo, map.psi[j].front());
    y_hi = std::max(y_hi, map.psi[j].back());
  }
  const double hy = (y_hi - y_lo) / static_cast<double>(n - 1);
  Grid yg = Grid::free_space({n}, {hy}, {y_lo}, prob.padding);

  NormalizedProblem np{xg, yg, prob.horizon, map, {}, {}, {}, {}, {}, ScalarField::constant(yg, 0.0)};
  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) ys[k] = yg.coord(0, k);

  for (std::size_t j = 0; j < nt; ++j) {
    const Pchip fwd(xs, map.psi[j]);
    std::vector<double> xy(n);
    for (std::size_t k = 0; k < n; ++k) {
      xy[k] = fwd.invert(ys[k]);
      if (ys[k] < map.psi[j].front() || ys[k] > map.psi[j].back()) {
        ++np.clamped_nodes;
      } else {
        np.round_trip_error = std::max(np.round_trip_error, std::abs(fwd(xy[k]) - ys[k]));
      }
    }
    const Pchip pp(xs, Px[j]);
    std::vector<double> P(n);
    for (std::size_t k = 0; k < n; ++k) P[k] = pp(xy[k]);
    np.x_of_y.push_back(std::move(xy));
    np.P.push_back(std::move(P));
  }
  if (np.round_trip_error > 1e-10) {
    throw NumericalError("parabolic: inverse map round trip error " +
                         std::to_string(np.round_trip_error));
  }

  // gauge rho = -1/2 int_{y_lo}^y P, Q = -P_y/2 + P^2/4 + 1/2 int P_t dy + c, g = f e^rho
  const auto P_t = time_derivative(np.P, dt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = map.t_nodes[j];
    auto rho = cumulative_trapezoid(np.P[j], hy);
    for (double& r : rho) r *= -0.5;
    const auto Pt_int = cumulative_trapezoid(P_t[j], hy);
    const auto P_y = derivative(ScalarField(yg, np.P[j]), 0);
    const auto c = prob.c.sample_at(xg, t, np.x_of_y[j]);
    const auto f = prob.f.sample_at(xg, t, np.x_of_y[j]);
    std::vector<double> Q(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double P = np.P[j][k];
      Q[k] = -0.5 * P_y[k] + 0.25 * P * P + 0.5 * Pt_int[k] + c[k];
      g[k] = f[k] * std::exp(rho[k]);
    }
    np.rho.push_back(std::move(rho));
    np.Q.push_back(std::move(Q));
    np.g.push_back(std::move(g));
  }

  const Pchip u0(xs, {prob.u_init.values().begin(), prob.u_init.values().end()});
  std::vector<double> v0(n);
  for (std::size_t k = 0; k < n; ++k) v0[k] = std::exp(np.rho[0][k]) * u0(np.x_of_y[0][k]);
  np.v_init = ScalarField(yg, std::move(v0));
  return np;
}

ScalarTrajectory solve_normalized(const NormalizedProblem& np, const SeriesOptions& opts,
                                  std::optional<SeriesSolution>* detail) {
  if (opts.time_steps != np.time_steps()) {
    throw ConfigError("parabolic: series time_steps differs from the normalization");
  }
  std::vector<ScalarField> mq, mg;
  for (std::size_t j = 0; j < np.Q.size(); ++j) {
    std::vector<double> q(np.Q[j]), g(np.g[j]);
    for (double& v : q) v = -v;
    for (double& v : g) v = -v;
    mq.emplace_back(np.y_grid, std::move(q));
    mg.emplace_back(np.y_grid, std::move(g));
  }
  const Forcing F = Forcing::sampled(np.map.t_nodes, std::move(mq));
  const Forcing S = Forcing::sampled(np.map.t_nodes, std::move(mg));
  auto sol = solve_controlled_heat(np.v_init, F, S, np.horizon, opts);
  ScalarTrajectory v = sol.G;
  if (detail) detail->emplace(std::move(sol));
  return v;
}

ScalarTrajectory back_transform(const ScalarTrajectory& v, const NormalizedProblem& np,
                                std::size_t* extrapolated) {
  if (!(v.grid() == np.y_grid)) throw ConfigError("back_transform: trajectory not on the y-grid");
  const auto& tn = np.map.t_nodes;
  const std::size_t n = np.y_grid.points(0);
  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) ys[k] = np.y_grid.coord(0, k);
  std::size_t outside = 0;
  std::vector<ScalarField> us;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = v.time(i);
    const auto it = std::min_element(tn.begin(), tn.end(), [t](double a, double b) {
      return std::abs(a - t) < std::abs(b - t);
    });
    if (std::abs(*it - t) > 1e-9 * std::max(1.0, np.horizon)) {
      throw ConfigError("back_transform: time is not a normalization node");
    }
    const std::size_t j = static_cast<std::size_t>(it - tn.begin());
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = std::exp(-np.rho[j][k]) * v[i][k];
    const Pchip p(ys, w);
    std::vector<double> u(np.x_grid.size());
    for (std::size_t x = 0; x < u.size(); ++x) {
      const double y = np.map.psi[j][x];
      if (y < ys.front() - 1e-12 * std::abs(ys.back() - ys.front()) ||
          y > ys.back() + 1e-12 * std::abs(ys.back() - ys.front())) {
        ++outside;
      }
      u[x] = p(y);
    }
    us.emplace_back(np.x_grid, std::move(u));
  }
  if (extrapolated) *extrapolated = outside;
  return {v.times(), std::move(us)};
}

ScalarTrajectory solve_parabolic(const ParabolicProblem& prob, const SeriesOptions& opts) {
  const auto np = normalize(prob, opts.time_steps);
  return back_transform(solve_normalized(np, opts), np);
}

}  // namespace duhamel
