#include "duhamel/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duhamel/error.hpp"

namespace duhamel {

Grid::Grid(std::vector<std::size_t> points, std::vector<double> spacing,
           std::vector<double> origin, Boundary boundary, double padding_factor)
    : points_(std::move(points)),
      spacing_(std::move(spacing)),
      origin_(std::move(origin)),
      boundary_(boundary),
      padding_(padding_factor) {
  const std::size_t n = points_.size();
  if (n < 1 || n > 3) throw ConfigError("grid: ndim must be 1, 2 or 3");
  if (spacing_.size() != n || origin_.size() != n) {
    throw ConfigError("grid: points, spacing and origin must have ndim entries");
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (points_[d] < 8) throw ConfigError("grid: at least 8 points per axis required");
    if (!(spacing_[d] > 0.0) || !std::isfinite(spacing_[d])) {
      throw ConfigError("grid: spacing must be finite and strictly positive");
    }
    if (!std::isfinite(origin_[d])) throw ConfigError("grid: origin must be finite");
  }
  if (boundary_ == Boundary::Periodic) {
    padding_ = 1.0;
  } else if (!(padding_ >= 1.0) || !std::isfinite(padding_)) {
    throw ConfigError("grid: padding_factor must be >= 1");
  }
  strides_.assign(n, 1);
  for (std::size_t d = n; d-- > 0;) {
    strides_[d] = size_;
    size_ *= points_[d];
  }
}

Grid Grid::periodic(std::vector<std::size_t> points, std::vector<double> spacing,
                    std::vector<double> origin) {
  return {std::move(points), std::move(spacing), std::move(origin), Boundary::Periodic};
}

Grid Grid::free_space(std::vector<std::size_t> points, std::vector<double> spacing,
                      std::vector<double> origin, double padding_factor) {
  return {std::move(points), std::move(spacing), std::move(origin), Boundary::FreeSpaceTruncated,
          padding_factor};
}

Grid Grid::periodic_1d(std::size_t n, double length, double x0) {
  return periodic({n}, {length / static_cast<double>(n)}, {x0});
}

double Grid::min_spacing() const { return *std::min_element(spacing_.begin(), spacing_.end()); }

std::array<std::size_t, 3> Grid::unflatten(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t d = 0; d < ndim(); ++d) {
    idx[d] = flat / strides_[d];
    flat -= idx[d] * strides_[d];
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, 3>& idx) const {
  std::size_t flat = 0;
  for (std::size_t d = 0; d < ndim(); ++d) flat += idx[d] * strides_[d];
  return flat;
}

Point Grid::point(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Point p{0.0, 0.0, 0.0};
  for (std::size_t d = 0; d < ndim(); ++d) p[d] = coord(d, idx[d]);
  return p;
}

Grid Grid::padded() const {
  if (periodic() || padding_ == 1.0) return *this;
  std::vector<std::size_t> pts(ndim());
  std::vector<double> org(ndim());
  const auto off = padding_offset();
  for (std::size_t d = 0; d < ndim(); ++d) {
    pts[d] = static_cast<std::size_t>(std::ceil(padding_ * static_cast<double>(points_[d]) - 1e-9));
    org[d] = origin_[d] - static_cast<double>(off[d]) * spacing_[d];
  }
  return {pts, spacing_, org, Boundary::FreeSpaceTruncated, 1.0};
}

std::array<std::size_t, 3> Grid::padding_offset() const {
  std::array<std::size_t, 3> off{0, 0, 0};
  if (periodic() || padding_ == 1.0) return off;
  for (std::size_t d = 0; d < ndim(); ++d) {
    const auto total =
        static_cast<std::size_t>(std::ceil(padding_ * static_cast<double>(points_[d]) - 1e-9));
    off[d] = (total - points_[d]) / 2;
  }
  return off;
}

Grid Grid::with_boundary(Boundary b, double padding_factor) const {
  return {points_, spacing_, origin_, b, padding_factor};
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << ndim() << "D " << (periodic() ? "periodic" : "free-space") << " [";
  for (std::size_t d = 0; d < ndim(); ++d) os << (d ? "x" : "") << points_[d];
  os << "] h=[";
  for (std::size_t d = 0; d < ndim(); ++d) os << (d ? "," : "") << spacing_[d];
  os << "]";
  if (!periodic()) os << " padding=" << padding_;
  return os.str();
}

bool operator==(const Grid& a, const Grid& b) {
  return a.points_ == b.points_ && a.spacing_ == b.spacing_ && a.origin_ == b.origin_ &&
         a.boundary_ == b.boundary_ && a.padding_ == b.padding_;
}

}  // namespace duhamel
