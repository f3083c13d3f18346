#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant. The variant is chosen
// once at startup from CPUID (override with DUHAMEL_SIMD=scalar|avx2) and can
// be switched explicitly for equivalence testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace duhamel::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = a .* b
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  // max |x|
  double (*max_abs)(const double* x, std::size_t n);
  // sum x (fixed blocked order per ISA)
  double (*sum)(const double* x, std::size_t n);
  // out[i] = sum_k w[k] * ext[i + k], i < n, k < taps
  void (*correlate)(const double* ext, const double* w, std::size_t taps, double* out,
                    std::size_t n);
  // Interleaved complex c[m] *= r[m], m < n modes
  void (*cscale)(const double* r, double* c, std::size_t n);
  // Interleaved complex acc[m] += r[m] * c[m], m < n modes
  void (*cscale_acc)(const double* r, const double* c, double* acc, std::size_t n);
};

const KernelTable& kernels_for(Isa isa);
bool isa_available(Isa isa);

Isa active_isa();
void set_active_isa(Isa isa);
std::string_view isa_name(Isa isa);

inline const KernelTable& kernels() { return kernels_for(active_isa()); }

// Convenience span wrappers over the active table.
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}
inline void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  kernels().mul(a.data(), b.data(), out.data(), out.size());
}
inline double max_abs(std::span<const double> x) { return kernels().max_abs(x.data(), x.size()); }
inline double sum(std::span<const double> x) { return kernels().sum(x.data(), x.size()); }

}  // namespace duhamel::simd
