// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <cmath>

#include "table_internal.hpp"

namespace duhamel::simd::detail {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, hi));
}

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, hi));
}

double max_abs(const double* x, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_and_pd(mask, _mm256_loadu_pd(x + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

double sum(const double* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_add_pd(s0, _mm256_loadu_pd(x + i));
    s1 = _mm256_add_pd(s1, _mm256_loadu_pd(x + i + 4));
  }
  if (i + 4 <= n) {
    s0 = _mm256_add_pd(s0, _mm256_loadu_pd(x + i));
    i += 4;
  }
  double r = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) r += x[i];
  return r;
}

void correlate(const double* ext, const double* w, std::size_t taps, double* out,
               std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < taps; ++k) {
      const __m256d wk = _mm256_broadcast_sd(w + k);
      a0 = _mm256_fmadd_pd(wk, _mm256_loadu_pd(ext + i + k), a0);
      a1 = _mm256_fmadd_pd(wk, _mm256_loadu_pd(ext + i + k + 4), a1);
    }
    _mm256_storeu_pd(out + i, a0);
    _mm256_storeu_pd(out + i + 4, a1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < taps; ++k) {
      a0 = _mm256_fmadd_pd(_mm256_broadcast_sd(w + k), _mm256_loadu_pd(ext + i + k), a0);
    }
    _mm256_storeu_pd(out + i, a0);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc = std::fma(w[k], ext[i + k], acc);
    out[i] = acc;
  }
}

// Two interleaved complex values per register: r[m], r[m], r[m+1], r[m+1].
inline __m256d dup_pair(const double* r) {
  const __m128d rr = _mm_loadu_pd(r);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(rr), 0b01010000);
}

void cscale(const double* r, double* c, std::size_t n) {
  std::size_t m = 0;
  for (; m + 2 <= n; m += 2) {
    _mm256_storeu_pd(c + 2 * m, _mm256_mul_pd(dup_pair(r + m), _mm256_loadu_pd(c + 2 * m)));
  }
  for (; m < n; ++m) {
    c[2 * m] *= r[m];
    c[2 * m + 1] *= r[m];
  }
}

void cscale_acc(const double* r, const double* c, double* acc, std::size_t n) {
  std::size_t m = 0;
  for (; m + 2 <= n; m += 2) {
    __m256d a = _mm256_loadu_pd(acc + 2 * m);
    a = _mm256_fmadd_pd(dup_pair(r + m), _mm256_loadu_pd(c + 2 * m), a);
    _mm256_storeu_pd(acc + 2 * m, a);
  }
  for (; m < n; ++m) {
    acc[2 * m] = std::fma(r[m], c[2 * m], acc[2 * m]);
    acc[2 * m + 1] = std::fma(r[m], c[2 * m + 1], acc[2 * m + 1]);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{axpy, mul, max_abs, sum, correlate, cscale, cscale_acc};
  return table;
}

}  // namespace duhamel::simd::detail
