#include "duhamel/field.hpp"

#include <algorithm>
#include <cmath>

#include "duhamel/simd/kernels.hpp"

namespace duhamel {
namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericalError(std::string(what) + ": non-finite value");
  }
}

}  // namespace

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("scalar field: size does not match grid");
  require_finite(values_, "scalar field");
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
  return {grid, std::vector<double>(grid.size(), value)};
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(const Point&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return {grid, std::move(v)};
}

double ScalarField::max_abs() const { return simd::max_abs(values_); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

VectorField::VectorField(Grid grid, std::vector<std::vector<double>> components)
    : grid_(std::move(grid)), components_(std::move(components)) {
  if (components_.size() != grid_.ndim()) {
    throw ConfigError("vector field: component count must equal ndim");
  }
  for (const auto& c : components_) {
    if (c.size() != grid_.size()) throw ConfigError("vector field: component size mismatch");
    require_finite(c, "vector field");
  }
}

VectorField VectorField::zeros(const Grid& grid) {
  return {grid, std::vector<std::vector<double>>(grid.ndim(), std::vector<double>(grid.size()))};
}

VectorField VectorField::sample(const Grid& grid, const std::function<Point(const Point&)>& fn) {
  std::vector<std::vector<double>> c(grid.ndim(), std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point v = fn(grid.point(i));
    for (std::size_t d = 0; d < grid.ndim(); ++d) c[d][i] = v[d];
  }
  return {grid, std::move(c)};
}

double VectorField::max_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double s = 0.0;
    for (const auto& c : components_) s += c[i] * c[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  return max_abs_diff(a.values(), b.values());
}

double rms_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("rms_diff: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace duhamel

namespace duhamel {

ScalarField extend_clamped(const ScalarField& f, const Grid& target) {
  const Grid& src = f.grid();
  if (src.ndim() != target.ndim()) throw ConfigError("extend_clamped: dimension mismatch");
  std::array<std::vector<std::size_t>, 3> map;
  for (std::size_t d = 0; d < src.ndim(); ++d) {
    const double h = src.spacing(d);
    if (std::abs(target.spacing(d) - h) > 1e-12 * h) {
      throw ConfigError("extend_clamped: spacing mismatch");
    }
    map[d].resize(target.points(d));
    const long n = static_cast<long>(src.points(d));
    for (std::size_t i = 0; i < target.points(d); ++i) {
      const long j = std::lround((target.coord(d, i) - src.origin()[d]) / h);
      map[d][i] = static_cast<std::size_t>(std::clamp<long>(j, 0, n - 1));
    }
  }
  std::vector<double> out(target.size());
  const auto vals = f.values();
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto idx = target.unflatten(k);
    for (std::size_t d = 0; d < src.ndim(); ++d) idx[d] = map[d][idx[d]];
    out[k] = vals[src.flatten(idx)];
  }
  return {target, std::move(out)};
}

}  // namespace duhamel
