#include <cmath>

#include "table_internal.hpp"

namespace duhamel::simd::detail {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void correlate(const double* ext, const double* w, std::size_t taps, double* out,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += w[k] * ext[i + k];
    out[i] = acc;
  }
}

void cscale(const double* r, double* c, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) {
    c[2 * m] *= r[m];
    c[2 * m + 1] *= r[m];
  }
}

void cscale_acc(const double* r, const double* c, double* acc, std::size_t n) {
  for (std::size_t m = 0; m < n; ++m) {
    acc[2 * m] += r[m] * c[2 * m];
    acc[2 * m + 1] += r[m] * c[2 * m + 1];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{axpy, mul, max_abs, sum, correlate, cscale, cscale_acc};
  return table;
}

}  // namespace duhamel::simd::detail
