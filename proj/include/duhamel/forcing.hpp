#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "duhamel/expr.hpp"
#include "duhamel/field.hpp"

namespace duhamel {

/// Time-dependent scalar potential F(x, t): an expression or a stack of
/// sampled snapshots with linear interpolation in t (clamped outside the
/// sampled time range). Carries bounds m <= F <= M on the time box with
/// M >= 0.
class Forcing {
 public:
  enum class Kind { Expression, SampledStack };

  /// Evaluation may not exceed the declared bounds by more than this.
  static constexpr double kBoundSlack = 1e-9;

  Forcing();  // F = 0
  static Forcing constant(double c);
  /// Bounds left undeclared; call estimate_bounds() or with_bounds() before use.
  static Forcing expression(Expr e);
  static Forcing expression(Expr e, double inf_bound, double sup_bound);
  /// Bounds taken from the data.
  static Forcing sampled(std::vector<double> times, std::vector<ScalarField> snapshots);

  Kind kind() const noexcept { return kind_; }
  bool has_bounds() const noexcept { return bounds_.has_value(); }
  /// M (>= 0). Throws ConfigError if undeclared.
  double sup_bound() const;
  /// m (<= M).
  double inf_bound() const;
  /// max(|m|, M), the L-infinity bound.
  double abs_bound() const;

  Forcing with_bounds(double inf_bound, double sup_bound) const;
  /// Bounds from dense sampling over grid x [0, horizon] (time_samples + 1
  /// instants); for constant expressions, the exact value.
  Forcing estimate_bounds(const Grid& grid, double horizon, std::size_t time_samples) const;
  /// s * F with bounds rescaled.
  Forcing scaled(double s) const;
  Forcing halved() const { return scaled(0.5); }

  /// Exactly zero everywhere.
  bool is_zero() const;
  /// Constant in space and time; value in *c.
  bool is_constant(double* c = nullptr) const;
  const Expr* expression_ptr() const { return kind_ == Kind::Expression ? &expr_ : nullptr; }
  const std::vector<double>& stack_times() const noexcept { return times_; }
  const std::vector<ScalarField>& stack() const noexcept { return stack_; }

  /// Values at time t on `grid`. Sampled stacks must live on grid or on a
  /// lattice of the same spacing (clamp-extended). Checks the declared
  /// bounds when present.
  std::vector<double> sample(const Grid& grid, double t) const;
  ScalarField sample_field(const Grid& grid, double t) const {
    return {grid, sample(grid, t)};
  }

 private:
  struct Bounds {
    double inf;
    double sup;
  };
  Kind kind_ = Kind::Expression;
  Expr expr_;
  std::vector<double> times_;
  std::vector<ScalarField> stack_;
  std::optional<Bounds> bounds_;
};

}  // namespace duhamel
