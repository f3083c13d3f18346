#include "duhamel/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "duhamel/error.hpp"

namespace duhamel {
namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using CacheKey = std::tuple<std::vector<std::size_t>, std::vector<double>>;

}  // namespace

Spectral::Spectral(const Grid& grid) {
  const std::size_t nd = grid.ndim();
  std::vector<int> n(nd);
  real_size_ = grid.size();
  modes_ = 1;
  for (std::size_t d = 0; d < nd; ++d) {
    n[d] = static_cast<int>(grid.points(d));
    modes_ *= (d + 1 == nd) ? grid.points(d) / 2 + 1 : grid.points(d);
  }
  {
    std::lock_guard lock(planner_mutex());
    double* rbuf = fftw_alloc_real(real_size_);
    fftw_complex* cbuf = fftw_alloc_complex(modes_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_dft_r2c(static_cast<int>(nd), n.data(), rbuf, cbuf, flags);
    inverse_plan_ = fftw_plan_dft_c2r(static_cast<int>(nd), n.data(), cbuf, rbuf, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
  if (!forward_plan_ || !inverse_plan_) throw NumericalError("spectral: FFTW planning failed");

  k_.assign(nd, std::vector<double>(modes_));
  k_odd_.assign(nd, std::vector<double>(modes_));
  k2_.assign(modes_, 0.0);
  std::vector<std::size_t> cdims(nd);
  for (std::size_t d = 0; d < nd; ++d) cdims[d] = (d + 1 == nd) ? grid.points(d) / 2 + 1 : grid.points(d);
  for (std::size_t m = 0; m < modes_; ++m) {
    std::size_t rem = m;
    for (std::size_t d = nd; d-- > 0;) {
      const std::size_t i = rem % cdims[d];
      rem /= cdims[d];
      const std::size_t N = grid.points(d);
      const double scale = 2.0 * std::numbers::pi / grid.extent(d);
      const long signed_i = (i <= N / 2) ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(N);
      const double k = scale * static_cast<double>(signed_i);
      k_[d][m] = k;
      k_odd_[d][m] = (N % 2 == 0 && i == N / 2) ? 0.0 : k;
      k2_[m] += k * k;
    }
  }
}

Spectral::~Spectral() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

std::shared_ptr<const Spectral> Spectral::for_grid(const Grid& grid) {
  static std::mutex cache_mutex;
  static std::map<CacheKey, std::shared_ptr<const Spectral>> cache;
  CacheKey key{grid.points(), grid.spacing()};
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Spectral> s(new Spectral(grid));
  cache.emplace(std::move(key), s);
  return s;
}

void Spectral::forward(std::span<const double> in, std::span<double> out) const {
  if (in.size() != real_size_ || out.size() != 2 * modes_) throw ConfigError("spectral: size mismatch");
  std::vector<double> copy(in.begin(), in.end());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), copy.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void Spectral::inverse(std::span<const double> in, std::span<double> out) const {
  if (out.size() != real_size_ || in.size() != 2 * modes_) throw ConfigError("spectral: size mismatch");
  std::vector<double> copy(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(copy.data()), out.data());
  const double norm = 1.0 / static_cast<double>(real_size_);
  for (double& v : out) v *= norm;
}

}  // namespace duhamel
