#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include "duhamel/app/commands.hpp"
#include "duhamel/cole_hopf.hpp"
#include "duhamel/expr.hpp"
#include "duhamel/field_io.hpp"
#include "duhamel/parabolic.hpp"

namespace duhamel::app {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Forcing make_forcing(const std::string& text, const std::optional<std::pair<double, double>>& bounds,
                     const Grid& grid, double horizon) {
  const Expr e = Expr::parse(text.empty() ? "0" : text);
  if (bounds) return Forcing::expression(e, bounds->first, bounds->second);
  if (e.is_constant()) return Forcing::constant(e.constant_value());
  return Forcing::expression(e).estimate_bounds(grid, horizon, 64);
}

ScalarField sample_expr(const Grid& g, const Expr& e, double t) {
  return ScalarField::sample(g, [&](const Point& p) { return e(p, t); });
}

double oracle_max(const ScalarTrajectory& traj, const Expr& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    worst = std::max(worst, max_abs_diff(traj[i], sample_expr(traj.grid(), exact, traj.time(i))));
  }
  return worst;
}

ScalarTrajectory component(const VectorTrajectory& u, std::size_t d) {
  std::vector<ScalarField> snaps;
  for (const auto& s : u.snapshots()) snaps.push_back(s.component_field(d));
  return {u.times(), std::move(snaps)};
}

void record_series(RunResult& r, const SeriesSolution& s) {
  r.truncation_depth = s.truncation_depth;
  r.converged = s.converged;
  r.under_resolved = s.under_resolved;
  r.last_relative_term = s.last_relative_term;
  r.tail_estimate = s.estimated_truncation_error.empty() ? 0.0
                        : *std::max_element(s.estimated_truncation_error.begin(),
                                            s.estimated_truncation_error.end());
}

VectorField load_u0(const RunConfig& c, const Grid& grid) {
  const auto& s = c.nse;
  if (!s.u0.empty()) {
    std::vector<Expr> comp;
    for (const auto& t : s.u0) comp.push_back(Expr::parse(t));
    return VectorField::sample(grid, [&](const Point& p) {
      Point v{};
      for (std::size_t d = 0; d < comp.size(); ++d) v[d] = comp[d](p, 0.0);
      return v;
    });
  }
  std::filesystem::path path(s.u0_file);
  if (path.is_relative()) path = std::filesystem::path(c.base_dir) / path;
  const auto recs = read_csf1_file(path.string());
  if (recs.size() != grid.ndim()) throw ConfigError("nse.u0_file: expected one record per axis");
  std::vector<std::vector<double>> comps;
  for (const auto& r : recs) {
    if (r.grid().points() != grid.points()) throw ConfigError("nse.u0_file: dims differ from grid");
    comps.emplace_back(r.values().begin(), r.values().end());
  }
  return VectorField(grid, std::move(comps));
}

RunResult run_nse(const RunConfig& c, const Grid& grid) {
  RunResult r;
  auto t0 = Clock::now();
  NSEProblem prob{load_u0(c, grid), c.nse.x0, c.nse.a,
                  make_forcing(c.nse.p_minus_f, c.nse.p_minus_f_bounds, grid, c.horizon),
                  c.nse.speed_bound, c.horizon, c.nse.curl_tolerance};
  r.timings["setup"] = seconds_since(t0);
  t0 = Clock::now();
  auto sol = solve_nse(prob, c.series);
  r.timings["solve"] = seconds_since(t0);
  t0 = Clock::now();
  record_series(r, sol.series);
  const double nu = c.series.kernel.viscosity;
  const ScalarField G0 = initial_G(sol.phi, nu);
  r.bounds.push_back(sol.ceiling);
  r.bounds.push_back(termwise_factorial_check(sol.series, G0, sol.F.abs_bound()));
  r.bounds.push_back(sol.floor.floor);
  r.bounds.push_back(sol.floor.upper);
  r.timings["bounds"] = seconds_since(t0);
  r.extra["path_gap"] = sol.path_gap;
  r.extra["forcing_inf"] = sol.F.inf_bound();
  r.extra["forcing_sup"] = sol.F.sup_bound();

  r.times = sol.series.G.times();
  r.fields.emplace_back("G", sol.series.G);
  static const char* names[] = {"u_x", "u_y", "u_z"};
  for (std::size_t d = 0; d < grid.ndim(); ++d) r.fields.emplace_back(names[d], component(sol.u, d));
  r.fields.emplace_back("phi", ScalarTrajectory({0.0}, {sol.phi}));
  if (sol.u.size() >= 3) r.residual = max_residual(nse_residual(sol.u, prob.p_minus_f, nu));

  if (c.oracle.any()) {
    double e = 0.0;
    for (std::size_t d = 0; d < c.oracle.exact_u.size() && d < grid.ndim(); ++d) {
      e = std::max(e, oracle_max(component(sol.u, d), Expr::parse(c.oracle.exact_u[d])));
    }
    if (!c.oracle.exact_G.empty()) e = std::max(e, oracle_max(sol.series.G, Expr::parse(c.oracle.exact_G)));
    r.oracle_error = e;
    r.oracle_tolerance = c.oracle.tolerance;
  }
  return r;
}

RunResult run_heat(const RunConfig& c, const Grid& grid) {
  RunResult r;
  auto t0 = Clock::now();
  const ScalarField G0 = sample_expr(grid, Expr::parse(c.heat.G0), 0.0);
  const Forcing F = make_forcing(c.heat.F, c.heat.F_bounds, grid, c.horizon);
  r.timings["setup"] = seconds_since(t0);
  t0 = Clock::now();
  const bool has_source = !c.heat.source.empty();
  auto sol = has_source
                 ? solve_controlled_heat(G0, F, make_forcing(c.heat.source, std::nullopt, grid, c.horizon),
                                         c.horizon, c.series)
                 : solve_controlled_heat(G0, F, c.horizon, c.series);
  r.timings["solve"] = seconds_since(t0);
  t0 = Clock::now();
  record_series(r, sol);
  if (!has_source) {
    r.bounds.push_back(ceiling_check(sol, G0, F.abs_bound()));
    r.bounds.push_back(termwise_factorial_check(sol, G0, F.abs_bound()));
  }
  r.timings["bounds"] = seconds_since(t0);
  r.times = sol.G.times();
  r.fields.emplace_back("G", sol.G);
  if (!c.oracle.exact_G.empty()) {
    r.oracle_error = oracle_max(sol.G, Expr::parse(c.oracle.exact_G));
    r.oracle_tolerance = c.oracle.tolerance;
  }
  return r;
}

Coefficient coefficient(const std::string& text) {
  const Expr e = Expr::parse(text);
  return e.is_constant() ? Coefficient(e.constant_value()) : Coefficient::expression(e);
}

RunResult run_parabolic(const RunConfig& c, const Grid& grid) {
  RunResult r;
  auto t0 = Clock::now();
  const auto& s = c.parabolic;
  ParabolicProblem prob{coefficient(s.A), coefficient(s.a), coefficient(s.c), coefficient(s.f),
                        grid, c.horizon, sample_expr(grid, Expr::parse(s.u0), 0.0), s.A_min,
                        s.x_ref, s.padding};
  const auto np = normalize(prob, c.series.time_steps);
  r.timings["normalize"] = seconds_since(t0);
  t0 = Clock::now();
  std::optional<SeriesSolution> detail;
  const auto v = solve_normalized(np, c.series, &detail);
  std::size_t extrapolated = 0;
  const auto u = back_transform(v, np, &extrapolated);
  r.timings["solve"] = seconds_since(t0);
  record_series(r, *detail);
  r.extra["round_trip_error"] = np.round_trip_error;
  r.extra["clamped_nodes"] = static_cast<double>(np.clamped_nodes);
  r.extra["extrapolated_nodes"] = static_cast<double>(extrapolated);
  r.times = u.times();
  r.fields.emplace_back("v", v);
  r.fields.emplace_back("u", u);
  if (!c.oracle.exact.empty()) {
    r.oracle_error = oracle_max(u, Expr::parse(c.oracle.exact));
    r.oracle_tolerance = c.oracle.tolerance;
  }
  return r;
}

}  // namespace

bool RunResult::bounds_passed() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundReport& b) { return b.passed(); });
}

int RunResult::exit_code() const {
  if (!converged || !bounds_passed()) return 3;
  if (!oracle_passed()) return 4;
  return 0;
}

RunResult run(const RunConfig& cfg) {
  const Grid grid = cfg.grid.build();
  switch (cfg.kind) {
    case ProblemKind::Nse:
      return run_nse(cfg, grid);
    case ProblemKind::ControlledHeat:
      return run_heat(cfg, grid);
    case ProblemKind::Parabolic:
      return run_parabolic(cfg, grid);
  }
  throw ConfigError("unknown problem kind");
}

}  // namespace duhamel::app
