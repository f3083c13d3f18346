#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace duhamel::verify {

struct ConvergencePoint {
  std::size_t resolution = 0;
  double linf = 0.0;
  double l2 = 0.0;
};

struct ConvergenceReport {
  std::string name;
  std::vector<ConvergencePoint> points;
  /// log2(e_i / e_{i+1}) per refinement pair.
  std::vector<double> order_linf;
  std::vector<double> order_l2;
  /// Error grew under some refinement.
  bool non_monotone = false;
  /// Finest error at the floor; orders past that point are meaningless.
  bool saturated = false;

  void write_jsonl(std::ostream& os) const;
  std::string summary() const;
};

struct ErrorNorms {
  double linf;
  double l2;
};

/// Runs error_at(resolution) for each resolution; each must double the
/// previous one and at least 3 are required.
ConvergenceReport convergence_study(const std::string& name,
                                    const std::vector<std::size_t>& resolutions,
                                    const std::function<ErrorNorms(std::size_t)>& error_at,
                                    double floor = 1e-12);

}  // namespace duhamel::verify
