#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "duhamel/forcing.hpp"
#include "duhamel/series.hpp"

namespace duhamel {

/// One pointwise comparison lhs <= rhs at a single output time (and term).
struct BoundEntry {
  double time = 0.0;
  int term = -1;  // -1 when the check is not per-term
  /// max over nodes of lhs - rhs; negative means satisfied with margin.
  double max_violation = 0.0;
  std::size_t location = 0;  // flat index of that maximum
  std::size_t violations = 0;  // nodes beyond the slack
};

struct BoundReport {
  std::string check;
  std::vector<BoundEntry> entries;

  std::size_t violations() const;
  double max_violation() const;
  bool passed() const { return violations() == 0; }
  /// One JSON object per entry and line.
  void write_jsonl(std::ostream& os) const;
};

/// Relative slack tolerated by every pointwise check.
inline constexpr double kBoundRelSlack = 1e-9;
/// Absolute slack floor, relative to max |rhs| over the grid. The termwise
/// check scales it by max e^{Mt} K*|G0| instead, the size of the sum.
inline constexpr double kBoundAbsSlack = 1e-12;

/// Pointwise lhs <= rhs within slack; abs_scale < 0 means max |rhs|.
BoundEntry compare_pointwise(std::span<const double> lhs, std::span<const double> rhs,
                             double time, int term, double abs_scale = -1.0);

/// K(., t) * f on the solution's grid, with the solver's padding and kernel.
ScalarField solution_envelope(const SeriesSolution& sol, const ScalarField& f, double t);

/// |G| <= e^{Mt} K*|G0|, M >= sup |F|.
BoundReport ceiling_check(const SeriesSolution& sol, const ScalarField& G0, double M);
/// |T_k| <= (Mt)^k / k! K*|G0| for every stored term.
BoundReport termwise_factorial_check(const SeriesSolution& sol, const ScalarField& G0, double M);

struct FloorReport {
  BoundReport floor;  // e^{m t} K*e^{-phi/2} <= G
  BoundReport upper;  // G <= e^{2 M t} K*e^{-phi/2}
  bool passed() const { return floor.passed() && upper.passed(); }
};
/// G0 must be e^{-phi/2}; m, M from the forcing's bounds.
FloorReport floor_check(const SeriesSolution& sol, const ScalarField& phi, const Forcing& F);

}  // namespace duhamel
