#pragma once

#include <span>
#include <vector>

namespace duhamel {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes)
/// through strictly increasing abscissae. Outside the data range the edge
/// value is returned.
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  /// For monotone increasing data: the x with p(x) = y, clamped to the range.
  double invert(double y) const;

 private:
  std::size_t interval(double x) const;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// out[0] = 0, out[i] = out[i-1] + h (y[i-1] + y[i]) / 2.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double h);

}  // namespace duhamel
