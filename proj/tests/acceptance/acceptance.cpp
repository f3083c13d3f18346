// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "duhamel/app/commands.hpp"
#include "duhamel/bounds.hpp"
#include "duhamel/cole_hopf.hpp"
#include "duhamel/heat_kernel.hpp"
#include "duhamel/parabolic.hpp"
#include "duhamel/series.hpp"
#include "duhamel/verify/oracles.hpp"
#include "duhamel/verify/random_cases.hpp"

using namespace duhamel;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [unmet: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ScalarField sample(const Grid& g, const Expr& e, double t = 0.0) {
  return ScalarField::sample(g, [&](const Point& p) { return e(p, t); });
}

// 1: constant forcing, spatially constant solution
void criterion1(Outcome& o) {
  const auto g = Grid::periodic_1d(128, 2 * kPi);
  SeriesOptions so;
  so.depth_max = 16;
  so.rel_tolerance = SeriesOptions::kMinRelTolerance;
  so.time_steps = 32;
  const auto sol = solve_controlled_heat(ScalarField::constant(g, 1.0), Forcing::constant(0.5), 1.0, so);
  const double eg = max_abs_diff(sol.G.back(), ScalarField::constant(g, std::exp(0.5)));
  double et = 0.0;
  for (std::size_t i = 0; i < sol.G.size(); ++i) {
    const double t = sol.G.time(i);
    double want = 1.0;
    for (std::size_t k = 0; k < sol.terms[i].size(); ++k) {
      if (k > 0) want *= 0.5 * t / static_cast<double>(k);
      et = std::max(et, max_abs_diff(sol.terms[i][k], ScalarField::constant(g, want)));
    }
  }
  o.detail << "|G(1)-e^0.5| = " << sci(eg) << ", max term error = " << sci(et)
           << ", depth = " << sol.truncation_depth;
  o.require(eg <= 1e-10, "G error <= 1e-10");
  o.require(et <= 1e-12, "term error <= 1e-12");
  o.require(sol.truncation_depth <= 16, "depth <= 16");
}

NSEProblem burgers_problem(std::size_t n, double T) {
  const auto g = Grid::periodic_1d(n, 2 * kPi);
  const auto u0 = ScalarField::sample(g, [](const Point& p) { return verify::burgers_exact_u(p[0], 0.0); });
  return NSEProblem{VectorField(g, {{u0.values().begin(), u0.values().end()}}), {}, -2 * std::log(1.5),
                    Forcing(), 2.0, T, std::nullopt};
}

// 2: Burgers through Cole-Hopf, plus the independent FD oracle
void criterion2(Outcome& o) {
  const double T = 0.5;
  const auto prob = burgers_problem(256, T);
  SeriesOptions so;
  so.output_times = {T};
  const auto sol = solve_nse(prob, so);
  const Grid& g = prob.u0.grid();
  const auto want = ScalarField::sample(g, [T](const Point& p) { return verify::burgers_exact_u(p[0], T); });
  const double es = max_abs_diff(sol.u.back().component_field(0), want);
  const double h = g.spacing(0), dt = 0.4 * h * h;
  const auto fd = verify::fd_burgers(prob.u0.component_field(0), T, dt);
  const double ef = max_abs_diff(fd.back(), want);
  const double budget = 5.0 * (dt + h * h);
  o.detail << "series u error = " << sci(es) << ", fd error = " << sci(ef) << " (budget " << sci(budget) << ")";
  o.require(es <= 1e-4, "series u error <= 1e-4");
  o.require(ef <= budget, "fd error within 5 (dt + h^2)");
}

// 3: series vs Crank-Nicolson on random bounded forcing
void criterion3(Outcome& o) {
  verify::Rng rng(3003);
  const auto g = Grid::periodic_1d(256, 2 * kPi);
  const double T = 0.25;
  double worst_rel = 0.0, min_order = 1e300, max_order = -1e300;
  std::size_t bad = 0;
  for (int c = 0; c < 20; ++c) {
    const Forcing F = verify::random_forcing(rng, 2.0, T);
    const auto G0 = sample(g, verify::random_trig(rng, 4, 2.0));
    double gap[2];
    for (int r = 0; r < 2; ++r) {
      SeriesOptions so;
      so.time_steps = 32u << r;
      so.output_times = {T};
      const auto sol = solve_controlled_heat(G0, F, T, so);
      const auto cn = verify::fd_controlled_heat(G0, F, T, T / static_cast<double>(so.time_steps));
      gap[r] = max_abs_diff(sol.G.back(), cn.back()) / cn.back().max_abs();
    }
    const double order = std::log2(gap[0] / gap[1]);
    worst_rel = std::max(worst_rel, gap[0]);
    min_order = std::min(min_order, order);
    max_order = std::max(max_order, order);
    if (gap[0] > 5e-3 || std::abs(order - 2.0) > 0.6) ++bad;
  }
  o.detail << "worst rel gap = " << sci(worst_rel) << ", gap order in [" << min_order << ", " << max_order << "]";
  o.require(bad == 0, "every case: rel gap <= 5e-3 and order 2 +- 30%");
}

// 4: ceiling, termwise envelope, floor and upper estimate over random trials
void criterion4(Outcome& o) {
  verify::Rng rng(4004);
  std::size_t v_ceil = 0, v_term = 0, v_floor = 0, v_upper = 0, entries = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double T = 0.5;
    Grid g = Grid::periodic_1d(128, 2 * kPi);
    SeriesOptions so;
    so.time_steps = 16;
    so.output_times = {0.125, 0.25, 0.375, 0.5};
    if (trial % 3 == 1) {
      g = Grid::periodic({32, 32}, {2 * kPi / 32, 2 * kPi / 32}, {0.0, 0.0});
    } else if (trial % 3 == 2) {
      g = Grid::free_space({128}, {0.1}, {-6.4}, 2.0);
      so.time_steps = 64;
    }
    const Forcing F = verify::random_forcing(rng, 2.0, T);
    const double c0 = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const auto G0 = sample(g, verify::random_trig(rng, 4, c0));
    const auto sol = solve_controlled_heat(G0, F, T, so);
    const auto ceil = ceiling_check(sol, G0, F.abs_bound());
    const auto term = termwise_factorial_check(sol, G0, F.abs_bound());
    const auto phi = sample(g, Expr::constant(1.5) * verify::random_trig(rng, 3, 0.0));
    const auto sol2 = solve_controlled_heat(initial_G(phi), F, T, so);
    const auto fr = floor_check(sol2, phi, F);
    v_ceil += ceil.violations();
    v_term += term.violations();
    v_floor += fr.floor.violations();
    v_upper += fr.upper.violations();
    entries += ceil.entries.size() + term.entries.size() + fr.floor.entries.size() + fr.upper.entries.size();
  }
  o.detail << "violations: ceiling " << v_ceil << ", termwise " << v_term << ", floor " << v_floor << ", upper "
           << v_upper << " (" << entries << " checked snapshots)";
  o.require(v_ceil + v_term + v_floor + v_upper == 0, "zero violations");
}

// 5: 3D worst-case bound on K*e^{-phi/2}
void criterion5(Outcome& o) {
  verify::Rng rng(5005);
  const std::size_t n = 48;
  const double h = 0.25;
  const Grid g = Grid::free_space({n, n, n}, {h, h, h}, {-24 * h, -24 * h, -24 * h});
  KernelOptions ko;
  ko.method = KernelMethod::DirectQuadrature;
  const HeatKernel K(g, ko);
  double worst_ratio = 0.0;
  std::size_t violations = 0, samples = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double c = std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    const double a = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    const Expr phi = verify::random_lipschitz_potential(rng, 3, c, a);
    const auto G0 = ScalarField::sample(g, [&](const Point& p) { return std::exp(-0.5 * phi(p, 0.0)); });
    for (double t : {0.1, 0.5, 1.0}) {
      const auto KG = K.apply(G0, t);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Point p = g.point(i);
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double bound = worst_case_upper_bound(r, t, c, a);
        const double ratio = KG[i] / bound;
        worst_ratio = std::max(worst_ratio, ratio);
        if (KG[i] > bound) ++violations;
        ++samples;
      }
    }
  }
  o.detail << "max K*e^{-phi/2} / bound = " << worst_ratio << " over " << samples << " samples, " << violations
           << " violations";
  o.require(violations == 0, "bound never exceeded");
}

// 6: residual of the momentum equation for the solver output vs the exact field
void criterion6(Outcome& o) {
  const double T = 0.5;
  double res[2], res_exact[2];
  for (int r = 0; r < 2; ++r) {
    const auto prob = burgers_problem(256, T);
    SeriesOptions so;
    so.time_steps = 32u << r;
    const auto sol = solve_nse(prob, so);
    res[r] = max_residual(nse_residual(sol.u, Forcing()));
    std::vector<VectorField> ex;
    for (double t : sol.u.times()) {
      ex.push_back(VectorField::sample(prob.u0.grid(), [t](const Point& p) {
        return Point{verify::burgers_exact_u(p[0], t), 0.0, 0.0};
      }));
    }
    res_exact[r] = max_residual(nse_residual(VectorTrajectory(sol.u.times(), std::move(ex)), Forcing()));
  }
  o.detail << "residual solver/exact: " << sci(res[0]) << "/" << sci(res_exact[0]) << " -> refined "
           << sci(res[1]) << "/" << sci(res_exact[1]);
  o.require(res[0] <= 10 * res_exact[0] && res[1] <= 10 * res_exact[1], "within 10x of the exact residual");
  o.require(res[1] < res[0], "decreases under refinement");
}

ParabolicProblem heat_problem(Coefficient A, Coefficient a, Coefficient c, Coefficient f, std::size_t n,
                              double x0, double h, double T) {
  const auto xg = Grid::free_space({n}, {h}, {x0}, 1.0);
  auto u0 = ScalarField::sample(xg, [](const Point& p) { return std::exp(-p[0] * p[0]); });
  return ParabolicProblem{std::move(A), std::move(a), std::move(c), std::move(f), xg, T, u0, 1e-12,
                          std::nullopt, 2.0};
}

// 7: parabolic reduction
void criterion7(Outcome& o) {
  double e_id = 0.0;
  {
    const double T = 0.5;
    auto p = heat_problem(-1.0, 0.0, 0.4, Coefficient::expression(Expr::parse("cos(x)*exp(-t)")), 64, -3.0,
                          0.1, T);
    SeriesOptions so;
    so.time_steps = 16;
    const auto u = solve_parabolic(p, so);
    const auto xg = p.x_grid.with_boundary(Boundary::FreeSpaceTruncated, p.padding);
    std::vector<double> ts;
    std::vector<ScalarField> Fs, Ss;
    for (std::size_t j = 0; j <= so.time_steps; ++j) {
      const double t = T * static_cast<double>(j) / static_cast<double>(so.time_steps);
      ts.push_back(t);
      Fs.push_back(ScalarField::constant(xg, -0.4));
      Ss.push_back(ScalarField::sample(xg, [t](const Point& q) { return -std::cos(q[0]) * std::exp(-t); }));
    }
    const ScalarField g0(xg, {p.u_init.values().begin(), p.u_init.values().end()});
    const auto direct = solve_controlled_heat(g0, Forcing::sampled(ts, Fs), Forcing::sampled(ts, Ss), T, so);
    for (std::size_t i = 0; i < u.size(); ++i) e_id = std::max(e_id, max_abs_diff(u[i].values(), direct.G[i].values()));
  }
  double e_const = 0.0;
  {
    const double k = 0.8, c = 0.3, f = -0.4;
    const auto np = normalize(heat_problem(-1.0, k, c, f, 129, -4.0, 1.0 / 16, 0.5), 8);
    const double y0 = np.y_grid.coord(0, 0);
    for (std::size_t j = 0; j < np.Q.size(); ++j) {
      for (std::size_t i = 0; i < np.Q[j].size(); ++i) {
        const double y = np.y_grid.coord(0, i);
        e_const = std::max({e_const, std::abs(np.P[j][i] - k), std::abs(np.Q[j][i] - (k * k / 4 + c)),
                            std::abs(np.g[j][i] - f * std::exp(-k * y / 2)),
                            std::abs(np.rho[j][i] + k * (y - y0) / 2)});
      }
    }
  }
  double e_rt = 0.0;
  for (double A : {-1.0, -4.0}) {
    const double T = 0.5;
    const auto p = heat_problem(A, 0.0, 0.0, 0.0, 256, -12.8, 0.1, T);
    SeriesOptions so;
    so.time_steps = 8;
    const auto u = solve_parabolic(p, so);
    const ScalarField u0(p.x_grid.with_boundary(Boundary::Periodic), {p.u_init.values().begin(), p.u_init.values().end()});
    e_rt = std::max(e_rt, max_abs_diff(u.back().values(), verify::heat_dft(u0, T, -A).values()));
  }
  o.detail << "identity vs direct = " << sci(e_id) << ", constant-coefficient vs symbolic = " << sci(e_const)
           << ", heat round trip = " << sci(e_rt);
  o.require(e_id <= 1e-10, "identity reduction <= 1e-10");
  o.require(e_const <= 1e-8, "constant-coefficient case <= 1e-8");
  o.require(e_rt <= 1e-6, "round trip <= 1e-6");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8: repeated solves are byte-identical
void criterion8(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("duhamel_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> configs{
      {"nse2d", R"yaml(schema_version: 1
problem: nse
seed: 8
threads: 1
grid: {boundary: periodic, points: [48, 48], length: [2*pi, 2*pi]}
series: {horizon: 0.5, time_steps: 16}
nse:
  u0: ["0.5*sin(x)*cos(y)/(1+0.25*cos(x)*cos(y))", "0.5*cos(x)*sin(y)/(1+0.25*cos(x)*cos(y))"]
  speed_bound: 1
  p_minus_f: "0.3*cos(x+t)"
)yaml"},
      {"parabolic", R"yaml(schema_version: 1
problem: parabolic
seed: 8
grid: {boundary: free-space, points: [96], spacing: [0.0625], origin: [-3]}
series: {horizon: 0.25, time_steps: 8}
parabolic: {A: "-(1+0.2*x^2)", a: "0.3*sin(x)", c: "0.1", f: "cos(x)*t", u0: "exp(-x^2)"}
)yaml"}};
  std::size_t files = 0, differing = 0;
  for (const auto& [name, text] : configs) {
    const fs::path cfg = dir / (name + ".yaml");
    std::ofstream(cfg) << text;
    std::ostringstream sink;
    for (int run = 0; run < 2; ++run) {
      app::SolveOverrides ov;
      ov.output_dir = (dir / (name + "_" + std::to_string(run))).string();
      const int rc = app::cmd_solve(cfg.string(), ov, sink, sink);
      o.require(rc == 0, name + " solve exit 0 (got " + std::to_string(rc) + ")");
    }
    for (const auto& entry : fs::directory_iterator(dir / (name + "_0"))) {
      const auto fname = entry.path().filename();
      if (fname == "manifest.json") continue;  // holds wall-clock timings
      ++files;
      if (slurp(entry.path()) != slurp(dir / (name + "_1") / fname)) ++differing;
    }
  }
  fs::remove_all(dir);
  o.detail << files << " artifacts compared, " << differing << " differ";
  o.require(files > 0 && differing == 0, "byte-identical outputs");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::function<void(Outcome&)> fn;
    double time_limit;  // seconds, 0 = none
  };
  const std::vector<Entry> all{{1, criterion1, 1.0},  {2, criterion2, 5.0}, {3, criterion3, 0.0},
                               {4, criterion4, 0.0},  {5, criterion5, 60.0}, {6, criterion6, 0.0},
                               {7, criterion7, 0.0},  {8, criterion8, 0.0}};
  int failed = 0;
  for (const auto& e : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << " [exception: " << ex.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.time_limit > 0.0) o.require(secs < e.time_limit, "runtime < " + std::to_string(int(e.time_limit)) + " s");
    std::cout << "CRITERION " << e.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << "  ("
              << sci(secs) << " s)" << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
