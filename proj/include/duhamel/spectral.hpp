#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "duhamel/grid.hpp"

namespace duhamel {

/// Real-to-complex transforms on a periodic lattice plus the wavenumber
/// tables for its half-spectrum. Complex data is interleaved (re, im).
/// Instances are shared through a process-wide cache; all methods are const
/// and safe to call concurrently.
class Spectral {
 public:
  static std::shared_ptr<const Spectral> for_grid(const Grid& grid);

  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  std::size_t real_size() const noexcept { return real_size_; }
  std::size_t modes() const noexcept { return modes_; }

  /// out has 2 * modes() doubles.
  void forward(std::span<const double> in, std::span<double> out) const;
  /// Normalised inverse; in is not modified.
  void inverse(std::span<const double> in, std::span<double> out) const;

  /// Angular wavenumber along axis d for every half-spectrum mode.
  std::span<const double> wavenumber(std::size_t d) const { return k_[d]; }
  /// As wavenumber(), with the Nyquist entry zeroed (odd derivatives).
  std::span<const double> wavenumber_odd(std::size_t d) const { return k_odd_[d]; }
  /// |k|^2 per mode.
  std::span<const double> k_squared() const { return k2_; }

 private:
  explicit Spectral(const Grid& grid);

  std::size_t real_size_ = 0;
  std::size_t modes_ = 0;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  std::vector<std::vector<double>> k_;
  std::vector<std::vector<double>> k_odd_;
  std::vector<double> k2_;
};

}  // namespace duhamel
