#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace duhamel {

enum class Boundary : std::uint8_t { Periodic = 0, FreeSpaceTruncated = 1 };

using Point = std::array<double, 3>;

/// Rectangular row-major lattice in 1-3 dimensions. Node i along axis d sits
/// at origin[d] + i * spacing[d] (the centre of cell i). Axis 0 varies
/// slowest. Periodic grids wrap with length points * spacing.
class Grid {
 public:
  Grid(std::vector<std::size_t> points, std::vector<double> spacing, std::vector<double> origin,
       Boundary boundary, double padding_factor = 1.0);

  static Grid periodic(std::vector<std::size_t> points, std::vector<double> spacing,
                       std::vector<double> origin);
  static Grid free_space(std::vector<std::size_t> points, std::vector<double> spacing,
                         std::vector<double> origin, double padding_factor = 1.0);

  /// Periodic 1D grid covering [x0, x0 + length) with n nodes.
  static Grid periodic_1d(std::size_t n, double length, double x0 = 0.0);

  std::size_t ndim() const noexcept { return points_.size(); }
  const std::vector<std::size_t>& points() const noexcept { return points_; }
  const std::vector<double>& spacing() const noexcept { return spacing_; }
  const std::vector<double>& origin() const noexcept { return origin_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == Boundary::Periodic; }
  double padding_factor() const noexcept { return padding_; }

  std::size_t size() const noexcept { return size_; }
  std::size_t points(std::size_t d) const { return points_[d]; }
  double spacing(std::size_t d) const { return spacing_[d]; }
  double min_spacing() const;
  /// Distance between consecutive elements along axis d in the flat array.
  std::size_t stride(std::size_t d) const { return strides_[d]; }
  /// points * spacing along axis d.
  double extent(std::size_t d) const { return static_cast<double>(points_[d]) * spacing_[d]; }

  double coord(std::size_t d, std::size_t i) const {
    return origin_[d] + static_cast<double>(i) * spacing_[d];
  }
  /// Multi-index of a flat index (unused trailing entries are 0).
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const;
  /// Coordinates of a flat index (unused trailing entries are 0).
  Point point(std::size_t flat) const;

  /// Grid the free-space solver works on: ceil(padding * points) nodes per
  /// axis, same spacing, centred on this grid. Identity for periodic grids or
  /// padding 1.
  Grid padded() const;
  /// Offsets (in nodes) of this grid's first node inside padded().
  std::array<std::size_t, 3> padding_offset() const;

  /// Same lattice with a different boundary mode.
  Grid with_boundary(Boundary b, double padding_factor = 1.0) const;

  std::string describe() const;

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  std::vector<std::size_t> points_;
  std::vector<double> spacing_;
  std::vector<double> origin_;
  Boundary boundary_;
  double padding_;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
};

}  // namespace duhamel
