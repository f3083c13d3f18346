#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "duhamel/error.hpp"
#include "duhamel/grid.hpp"

namespace duhamel {

/// One real value per grid node, row-major. Values are finite and fixed at
/// construction.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);

  static ScalarField constant(const Grid& grid, double value);
  static ScalarField sample(const Grid& grid, const std::function<double(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max_abs() const;
  double min() const;
  double max() const;

  std::vector<double> release() && { return std::move(values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// ndim component arrays on a shared grid.
class VectorField {
 public:
  VectorField(Grid grid, std::vector<std::vector<double>> components);

  static VectorField zeros(const Grid& grid);
  static VectorField sample(const Grid& grid,
                            const std::function<Point(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t ncomp() const noexcept { return components_.size(); }
  std::span<const double> component(std::size_t d) const { return components_[d]; }
  ScalarField component_field(std::size_t d) const { return {grid_, components_[d]}; }
  /// max over nodes of the Euclidean norm.
  double max_norm() const;

 private:
  Grid grid_;
  std::vector<std::vector<double>> components_;
};

/// Snapshots at strictly increasing times, all on one grid.
template <class Field>
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<double> times, std::vector<Field> snapshots)
      : times_(std::move(times)), snapshots_(std::move(snapshots)) {
    if (times_.size() != snapshots_.size()) {
      throw ConfigError("trajectory: times and snapshots differ in length");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
      if (times_[i] < 0.0) throw ConfigError("trajectory: negative time");
      if (i > 0 && !(times_[i] > times_[i - 1])) {
        throw ConfigError("trajectory: times must be strictly increasing");
      }
      if (i > 0 && !(snapshots_[i].grid() == snapshots_[0].grid())) {
        throw ConfigError("trajectory: snapshots on different grids");
      }
    }
  }

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t i) const { return times_[i]; }
  const Field& operator[](std::size_t i) const { return snapshots_[i]; }
  const std::vector<Field>& snapshots() const noexcept { return snapshots_; }
  const Field& back() const { return snapshots_.back(); }
  const Grid& grid() const { return snapshots_.front().grid(); }

 private:
  std::vector<double> times_;
  std::vector<Field> snapshots_;
};

using ScalarTrajectory = Trajectory<ScalarField>;
using VectorTrajectory = Trajectory<VectorField>;

/// max_i |a_i - b_i|; grids must match in size.
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const ScalarField& a, const ScalarField& b);
/// Resamples f onto a lattice with the same spacing (e.g. grid.padded() or
/// the base grid inside it). Nodes outside f's extent take the nearest edge
/// value.
ScalarField extend_clamped(const ScalarField& f, const Grid& target);

/// sqrt(mean (a-b)^2)
double rms_diff(std::span<const double> a, std::span<const double> b);

}  // namespace duhamel
