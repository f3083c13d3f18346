#include "duhamel/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace duhamel {
namespace {

void check_bounds_pair(double inf, double sup) {
  if (!std::isfinite(inf) || !std::isfinite(sup)) {
    throw ConfigError("forcing: bounds must be finite");
  }
  if (inf > sup) throw ConfigError("forcing: inf bound exceeds sup bound");
}

}  // namespace

Forcing::Forcing() : bounds_(Bounds{0.0, 0.0}) {}

Forcing Forcing::constant(double c) {
  if (!std::isfinite(c)) throw ConfigError("forcing: constant must be finite");
  return expression(Expr::constant(c), c, std::max(c, 0.0));
}

Forcing Forcing::expression(Expr e) {
  Forcing f;
  f.expr_ = std::move(e);
  f.bounds_.reset();
  if (f.expr_.is_constant()) {
    const double c = f.expr_.constant_value();
    f.bounds_ = Bounds{c, std::max(c, 0.0)};
  }
  return f;
}

Forcing Forcing::expression(Expr e, double inf_bound, double sup_bound) {
  Forcing f = expression(std::move(e));
  return f.with_bounds(inf_bound, sup_bound);
}

Forcing Forcing::sampled(std::vector<double> times, std::vector<ScalarField> snapshots) {
  if (times.empty()) throw ConfigError("forcing: empty sampled stack");
  if (times.size() != snapshots.size()) {
    throw ConfigError("forcing: stack times and snapshots differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("forcing: stack times must increase");
    if (!(snapshots[i].grid() == snapshots[0].grid())) {
      throw ConfigError("forcing: stack snapshots on different grids");
    }
  }
  Forcing f;
  f.kind_ = Kind::SampledStack;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : snapshots) {
    lo = std::min(lo, s.min());
    hi = std::max(hi, s.max());
  }
  f.times_ = std::move(times);
  f.stack_ = std::move(snapshots);
  f.bounds_ = Bounds{lo, std::max(hi, 0.0)};
  return f;
}

double Forcing::sup_bound() const {
  if (!bounds_) throw ConfigError("forcing: sup bound not declared");
  return bounds_->sup;
}

double Forcing::inf_bound() const {
  if (!bounds_) throw ConfigError("forcing: inf bound not declared");
  return bounds_->inf;
}

double Forcing::abs_bound() const { return std::max(std::abs(inf_bound()), sup_bound()); }

Forcing Forcing::with_bounds(double inf_bound, double sup_bound) const {
  check_bounds_pair(inf_bound, sup_bound);
  if (sup_bound < 0.0) throw ConfigError("forcing: sup bound M must be >= 0");
  Forcing f = *this;
  f.bounds_ = Bounds{inf_bound, sup_bound};
  return f;
}

Forcing Forcing::estimate_bounds(const Grid& grid, double horizon, std::size_t time_samples) const {
  if (kind_ == Kind::SampledStack || (kind_ == Kind::Expression && expr_.is_constant())) {
    return *this;
  }
  time_samples = std::max<std::size_t>(time_samples, 1);
  const Grid g = grid.padded();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t j = 0; j <= time_samples; ++j) {
    const double t = horizon * static_cast<double>(j) / static_cast<double>(time_samples);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double v = expr_(g.point(k), t);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "forcing: non-finite value " << v << " at node " << k << ", t = " << t;
        throw NumericalError(os.str());
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  Forcing f = *this;
  f.bounds_ = Bounds{lo, std::max(hi, 0.0)};
  return f;
}

Forcing Forcing::scaled(double s) const {
  if (!std::isfinite(s)) throw ConfigError("forcing: scale must be finite");
  Forcing f = *this;
  if (kind_ == Kind::Expression) {
    f.expr_ = Expr::constant(s) * expr_;
    if (expr_.is_constant()) f.expr_ = Expr::constant(s * expr_.constant_value());
  } else {
    for (auto& snap : f.stack_) {
      std::vector<double> v(snap.values().begin(), snap.values().end());
      for (double& x : v) x *= s;
      snap = ScalarField(snap.grid(), std::move(v));
    }
  }
  if (bounds_) {
    // The true sup is the declared sup unless it was raised to 0 (M >= 0).
    double lo = s * bounds_->inf;
    double hi = s * bounds_->sup;
    if (lo > hi) std::swap(lo, hi);
    f.bounds_ = Bounds{lo, std::max(hi, 0.0)};
  }
  return f;
}

bool Forcing::is_constant(double* c) const {
  if (kind_ == Kind::Expression) {
    if (!expr_.is_constant()) return false;
    if (c) *c = expr_.constant_value();
    return true;
  }
  const double v0 = stack_.front()[0];
  for (const auto& s : stack_) {
    for (double v : s.values()) {
      if (v != v0) return false;
    }
  }
  if (c) *c = v0;
  return true;
}

bool Forcing::is_zero() const {
  double c = 1.0;
  return is_constant(&c) && c == 0.0;
}

std::vector<double> Forcing::sample(const Grid& grid, double t) const {
  std::vector<double> out(grid.size());
  if (kind_ == Kind::Expression) {
    if (expr_.is_constant()) {
      std::fill(out.begin(), out.end(), expr_.constant_value());
    } else {
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = expr_(grid.point(k), t);
    }
  } else {
    auto on_grid = [&](std::size_t i) -> std::vector<double> {
      const auto& s = stack_[i];
      if (s.grid() == grid) return {s.values().begin(), s.values().end()};
      const Grid& sg = s.grid();
      if (sg.ndim() != grid.ndim() || sg.spacing() != grid.spacing()) {
        throw ConfigError("forcing: sampled stack grid " + sg.describe() +
                          " does not match solve grid " + grid.describe());
      }
      return extend_clamped(s, grid).release();
    };
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) {
      out = on_grid(0);
    } else if (it == times_.end()) {
      out = on_grid(times_.size() - 1);
    } else {
      const std::size_t j = static_cast<std::size_t>(it - times_.begin());
      const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
      const auto a = on_grid(j - 1);
      const auto b = on_grid(j);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * a[k] + w * b[k];
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw NumericalError("forcing: non-finite sample");
  }
  if (bounds_) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] < bounds_->inf - kBoundSlack || out[k] > bounds_->sup + kBoundSlack) {
        std::ostringstream os;
        os.precision(17);
        os << "forcing: sample " << out[k] << " at node " << k << ", t = " << t
           << " outside declared bounds [" << bounds_->inf << ", " << bounds_->sup << "]";
        throw NumericalError(os.str());
      }
    }
  }
  return out;
}

}  // namespace duhamel
