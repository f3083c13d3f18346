#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>

#include "duhamel/app/commands.hpp"
#include "duhamel/cole_hopf.hpp"
#include "duhamel/heat_kernel.hpp"
#include "duhamel/parabolic.hpp"
#include "duhamel/verify/manufactured.hpp"
#include "duhamel/verify/oracles.hpp"
#include "duhamel/verify/random_cases.hpp"
#include "json.hpp"

namespace duhamel::app {
namespace {

using json = nlohmann::ordered_json;
using verify::Rng;
constexpr double kPi = std::numbers::pi;

struct Check {
  std::string suite;
  std::string name;
  double value;
  double limit;
  int code;  // exit code on failure
  bool passed() const { return value <= limit; }
};

using Checks = std::vector<Check>;

ScalarField sample(const Grid& g, const Expr& e, double t = 0.0) {
  return ScalarField::sample(g, [&](const Point& p) { return e(p, t); });
}

double rel_diff(const ScalarField& a, const ScalarField& ref) {
  return max_abs_diff(a, ref) / std::max(ref.max_abs(), 1e-300);
}

void suite_bounds(const VerifyOptions& o, Checks& out) {
  Rng rng(o.seed);
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  const double T = 0.5;
  SeriesOptions so;
  so.time_steps = 16;
  so.output_times = {0.125, 0.25, 0.375, 0.5};
  std::size_t ceil_v = 0, term_v = 0, floor_v = 0, upper_v = 0;
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    // trial 0: constant F close to M with positive G0, so an underestimated M shows
    const Forcing F = trial == 0 ? Forcing::constant(1.5).with_bounds(-2.0, 2.0)
                                 : verify::random_forcing(rng, 2.0, T);
    const double c0 = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const Expr g0 = trial == 0 ? Expr::constant(2.0) + Expr::constant(0.2) * verify::random_trig(rng, 3, 0.0)
                               : verify::random_trig(rng, 4, c0);
    const auto G0 = sample(g, g0);
    const auto sol = solve_controlled_heat(G0, F, T, so);
    const double M = F.abs_bound() * o.m_scale;
    ceil_v += ceiling_check(sol, G0, M).violations();
    term_v += termwise_factorial_check(sol, G0, M).violations();

    const auto phi = sample(g, Expr::constant(1.5) * verify::random_trig(rng, 3, 0.0));
    const auto sol2 = solve_controlled_heat(initial_G(phi), F, T, so);
    const auto fr = floor_check(sol2, phi, F);
    floor_v += fr.floor.violations();
    upper_v += fr.upper.violations();
  }
  out.push_back({"bounds", "ceiling_violations", double(ceil_v), 0.0, 3});
  out.push_back({"bounds", "termwise_violations", double(term_v), 0.0, 3});
  out.push_back({"bounds", "floor_violations", double(floor_v), 0.0, 3});
  out.push_back({"bounds", "upper_violations", double(upper_v), 0.0, 3});
}

void suite_oracles(const VerifyOptions& o, Checks& out) {
  Rng rng(o.seed + 1);
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  const double T = 0.25;
  SeriesOptions so;
  so.time_steps = 32;
  so.output_times = {T};
  double worst = 0.0;
  const std::size_t cases = std::max<std::size_t>(3, o.trials / 5);
  for (std::size_t i = 0; i < cases; ++i) {
    const Forcing F = verify::random_forcing(rng, 2.0, T);
    const auto G0 = sample(g, verify::random_trig(rng, 4, 2.0));
    const auto sol = solve_controlled_heat(G0, F, T, so);
    const auto cn = verify::fd_controlled_heat(G0, F, T, T / 64);
    worst = std::max(worst, rel_diff(sol.G.back(), cn.back()));
  }
  out.push_back({"oracles", "series_vs_crank_nicolson_rel", worst, 5e-3, 4});

  const auto f = sample(g, verify::random_trig(rng, 12, 0.5));
  out.push_back({"oracles", "spectral_kernel_vs_dft", max_abs_diff(convolve(f, 0.3), verify::heat_dft(f, 0.3)),
                 1e-12, 4});

  const auto fg = Grid::free_space({256}, {0.1}, {-12.8});
  const auto gauss = ScalarField::sample(fg, [](const Point& p) { return std::exp(-p[0] * p[0]); });
  KernelOptions ko;
  ko.method = KernelMethod::DirectQuadrature;
  const double t = 0.5;
  const auto exact = ScalarField::sample(fg, [t](const Point& p) {
    return std::exp(-p[0] * p[0] / (1 + 4 * t)) / std::sqrt(1 + 4 * t);
  });
  out.push_back({"oracles", "direct_kernel_vs_gaussian", max_abs_diff(HeatKernel(fg, ko).apply(gauss, t), exact),
                 1e-8, 4});
}

void suite_burgers(const VerifyOptions&, Checks& out) {
  const auto g = Grid::periodic_1d(256, 2 * kPi);
  const double T = 0.5;
  const auto u0 = ScalarField::sample(g, [](const Point& p) { return verify::burgers_exact_u(p[0], 0.0); });
  const auto want = ScalarField::sample(g, [T](const Point& p) { return verify::burgers_exact_u(p[0], T); });
  NSEProblem prob{VectorField(g, {{u0.values().begin(), u0.values().end()}}), {}, -2 * std::log(1.5),
                  Forcing(), 2.0, T, std::nullopt};
  SeriesOptions so;
  so.output_times = {T};
  const auto sol = solve_nse(prob, so);
  out.push_back({"burgers", "series_u_linf", max_abs_diff(sol.u.back().component_field(0), want), 1e-4, 4});
  const double h = g.spacing(0), dt = 0.4 * h * h;
  const auto fd = verify::fd_burgers(u0, T, dt);
  out.push_back({"burgers", "fd_over_budget", max_abs_diff(fd.back(), want) / (5 * (dt + h * h)), 1.0, 4});
}

ParabolicProblem heat_problem(Coefficient A, Coefficient a, Coefficient c, Coefficient f, std::size_t n,
                              double x0, double h, double T) {
  const auto xg = Grid::free_space({n}, {h}, {x0}, 1.0);
  auto u0 = ScalarField::sample(xg, [](const Point& p) { return std::exp(-p[0] * p[0]); });
  return ParabolicProblem{std::move(A), std::move(a), std::move(c), std::move(f), xg, T, u0, 1e-12,
                          std::nullopt, 2.0};
}

void suite_parabolic(const VerifyOptions&, Checks& out) {
  {
    const double T = 0.5;
    auto p = heat_problem(-1.0, 0.0, 0.4, Coefficient::expression(Expr::parse("cos(x)*exp(-t)")), 64, -3.0, 0.1, T);
    SeriesOptions so;
    so.time_steps = 16;
    const auto u = solve_parabolic(p, so);
    std::vector<double> ts;
    std::vector<ScalarField> Fs, Ss;
    const auto xg = p.x_grid.with_boundary(Boundary::FreeSpaceTruncated, p.padding);
    for (std::size_t j = 0; j <= so.time_steps; ++j) {
      const double t = T * j / so.time_steps;
      ts.push_back(t);
      Fs.push_back(ScalarField::constant(xg, -0.4));
      Ss.push_back(ScalarField::sample(xg, [t](const Point& q) { return -std::cos(q[0]) * std::exp(-t); }));
    }
    const ScalarField g0(xg, {p.u_init.values().begin(), p.u_init.values().end()});
    const auto direct = solve_controlled_heat(g0, Forcing::sampled(ts, Fs), Forcing::sampled(ts, Ss), T, so);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      worst = std::max(worst, max_abs_diff(u[i].values(), direct.G[i].values()));
    }
    out.push_back({"parabolic", "identity_vs_direct", worst, 1e-10, 4});
  }
  {
    const double k = 0.8, c = 0.3, f = -0.4;
    const auto np = normalize(heat_problem(-1.0, k, c, f, 129, -4.0, 1.0 / 16, 0.5), 4);
    double worst = 0.0;
    for (std::size_t j = 0; j < np.Q.size(); ++j) {
      for (std::size_t i = 0; i < np.Q[j].size(); ++i) {
        const double y = np.y_grid.coord(0, i);
        worst = std::max({worst, std::abs(np.P[j][i] - k), std::abs(np.Q[j][i] - (k * k / 4 + c)),
                          std::abs(np.g[j][i] - f * std::exp(-k * y / 2))});
      }
    }
    out.push_back({"parabolic", "constant_coefficient_vs_symbolic", worst, 1e-8, 4});
  }
  for (double A : {-1.0, -4.0}) {
    const double T = 0.5;
    const auto p = heat_problem(A, 0.0, 0.0, 0.0, 256, -12.8, 0.1, T);
    SeriesOptions so;
    so.time_steps = 8;
    const auto u = solve_parabolic(p, so);
    const auto pg = p.x_grid.with_boundary(Boundary::Periodic);
    const ScalarField u0(pg, {p.u_init.values().begin(), p.u_init.values().end()});
    const auto want = verify::heat_dft(u0, T, -A);
    out.push_back({"parabolic", A == -1.0 ? "pure_heat_round_trip" : "scaled_heat_round_trip",
                   max_abs_diff(u.back().values(), want.values()), 1e-6, 4});
  }
}

void suite_manufactured(const VerifyOptions&, Checks& out) {
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  for (const char* text : {"exp(0.5*sin(x)*exp(-t))", "2 + cos(x)*cos(t)"}) {
    const auto mc = verify::make_manufactured(Expr::parse(text), g, 1.0);
    SeriesOptions so;
    so.time_steps = 32;
    so.output_times = {0.25, 0.5, 0.75, 1.0};
    const auto sol = solve_controlled_heat(mc.G0, mc.forcing, mc.horizon, so);
    double eg = 0.0, eu = 0.0;
    const auto u = velocity_from_G(sol.G);
    for (std::size_t i = 0; i < sol.G.size(); ++i) {
      eg = std::max(eg, max_abs_diff(sol.G[i], mc.exact_G(sol.G.time(i))));
      eu = std::max(eu, max_abs_diff(u[i].component_field(0), mc.exact_u(sol.G.time(i)).component_field(0)));
    }
    out.push_back({"manufactured", std::string("G: ") + text, eg, 1e-6, 4});
    out.push_back({"manufactured", std::string("u: ") + text, eu, 1e-5, 4});
  }
}

const std::vector<std::pair<std::string, std::function<void(const VerifyOptions&, Checks&)>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<void(const VerifyOptions&, Checks&)>>> r{
      {"bounds", suite_bounds},       {"oracles", suite_oracles},
      {"burgers", suite_burgers},     {"parabolic", suite_parabolic},
      {"manufactured", suite_manufactured}};
  return r;
}

}  // namespace

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const auto& [n, fn] : registry()) {
    if (n == name) return true;
  }
  return false;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (!is_suite(suite)) {
    return report_error(ConfigErrors({"unknown suite '" + suite +
                                      "' (expected bounds, oracles, burgers, parabolic, manufactured, all)"}),
                        err);
  }
  try {
    Checks checks;
    for (const auto& [name, fn] : registry()) {
      if (suite == "all" || suite == name) fn(opts, checks);
    }
    int code = 0;
    std::size_t failed = 0;
    for (const auto& c : checks) {
      out << json{{"suite", c.suite}, {"check", c.name}, {"value", c.value}, {"limit", c.limit},
                  {"passed", c.passed()}}.dump()
          << "\n";
      if (!c.passed()) {
        ++failed;
        code = std::max(code, c.code);
      }
    }
    out << json{{"suite", suite}, {"checks", checks.size()}, {"failed", failed}, {"passed", failed == 0}}.dump()
        << "\n";
    return code;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

}  // namespace duhamel::app
