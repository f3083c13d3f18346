#include "duhamel/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace duhamel {

std::size_t BoundReport::violations() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.violations;
  return n;
}

double BoundReport::max_violation() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& e : entries) m = std::max(m, e.max_violation);
  return m;
}

void BoundReport::write_jsonl(std::ostream& os) const {
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["time"] = e.time;
    if (e.term >= 0) j["term"] = e.term;
    j["max_violation"] = e.max_violation;
    j["location"] = e.location;
    j["violations"] = e.violations;
    os << j.dump() << '\n';
  }
}

BoundEntry compare_pointwise(std::span<const double> lhs, std::span<const double> rhs,
                             double time, int term, double abs_scale) {
  if (lhs.size() != rhs.size()) throw ConfigError("bound check: size mismatch");
  double scale = abs_scale;
  if (scale < 0.0) {
    scale = 0.0;
    for (double r : rhs) scale = std::max(scale, std::abs(r));
  }
  BoundEntry e;
  e.time = time;
  e.term = term;
  e.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double d = lhs[i] - rhs[i];
    if (d > e.max_violation) {
      e.max_violation = d;
      e.location = i;
    }
    const double slack =
        kBoundRelSlack * std::max(std::abs(lhs[i]), std::abs(rhs[i])) + kBoundAbsSlack * scale;
    if (d > slack) ++e.violations;
  }
  return e;
}

ScalarField solution_envelope(const SeriesSolution& sol, const ScalarField& f, double t) {
  if (!(f.grid() == sol.grid)) throw ConfigError("bound check: field grid differs from solution");
  const Grid work = sol.grid.padded();
  const HeatKernel K(work, sol.kernel);
  const ScalarField fw = extend_clamped(f, work);
  return extend_clamped(K.apply(fw, t), sol.grid);
}

namespace {

ScalarField abs_field(const ScalarField& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x = std::abs(x);
  return {f.grid(), std::move(v)};
}

std::vector<double> scaled(const ScalarField& f, double s) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x *= s;
  return v;
}

void check_M(double M) {
  if (!(M >= 0.0) || !std::isfinite(M)) throw ConfigError("bound check: M must be finite and >= 0");
}

}  // namespace

BoundReport ceiling_check(const SeriesSolution& sol, const ScalarField& G0, double M) {
  check_M(M);
  BoundReport r{"ceiling", {}};
  const auto a = abs_field(G0);
  for (std::size_t i = 0; i < sol.G.size(); ++i) {
    const double t = sol.G.time(i);
    const auto rhs = scaled(solution_envelope(sol, a, t), std::exp(M * t));
    const auto lhs = abs_field(sol.G[i]);
    r.entries.push_back(compare_pointwise(lhs.values(), rhs, t, -1));
  }
  return r;
}

BoundReport termwise_factorial_check(const SeriesSolution& sol, const ScalarField& G0, double M) {
  check_M(M);
  BoundReport r{"termwise", {}};
  const auto a = abs_field(G0);
  for (std::size_t i = 0; i < sol.G.size(); ++i) {
    const double t = sol.G.time(i);
    const auto env = solution_envelope(sol, a, t);
    // terms are summands of G: their noise floor is set by the ceiling e^{Mt} K*|G0|
    const double floor_scale = std::exp(M * t) * env.max_abs();
    double coef = 1.0;
    for (std::size_t k = 0; k < sol.terms[i].size(); ++k) {
      if (k > 0) coef *= M * t / static_cast<double>(k);
      const auto lhs = abs_field(sol.terms[i][k]);
      r.entries.push_back(
          compare_pointwise(lhs.values(), scaled(env, coef), t, static_cast<int>(k), floor_scale));
    }
  }
  return r;
}

FloorReport floor_check(const SeriesSolution& sol, const ScalarField& phi, const Forcing& F) {
  const Forcing Fb = F.has_bounds() ? F : F.estimate_bounds(sol.grid, sol.horizon, 64);
  const double m = Fb.inf_bound();
  const double M = Fb.sup_bound();
  std::vector<double> g0(phi.values().begin(), phi.values().end());
  for (double& x : g0) x = std::exp(-0.5 * x);
  const ScalarField G0(phi.grid(), std::move(g0));
  FloorReport r{{"floor", {}}, {"upper", {}}};
  for (std::size_t i = 0; i < sol.G.size(); ++i) {
    const double t = sol.G.time(i);
    const auto env = solution_envelope(sol, G0, t);
    r.floor.entries.push_back(
        compare_pointwise(scaled(env, std::exp(m * t)), sol.G[i].values(), t, -1));
    r.upper.entries.push_back(
        compare_pointwise(sol.G[i].values(), scaled(env, std::exp(2.0 * M * t)), t, -1));
  }
  return r;
}

}  // namespace duhamel
