#include <atomic>
#include <cstdlib>
#include <string_view>

#include "table_internal.hpp"

namespace duhamel::simd {
namespace {

bool cpu_has_avx2() {
#if defined(DUHAMEL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  Isa best = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("DUHAMEL_SIMD")) {
    const std::string_view v{env};
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && best == Isa::Avx2) return Isa::Avx2;
  }
  return best;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

const KernelTable& kernels_for(Isa isa) {
#if defined(DUHAMEL_HAVE_AVX2)
  if (isa == Isa::Avx2 && cpu_has_avx2()) return detail::avx2_table();
#endif
  (void)isa;
  return detail::scalar_table();
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  active().store(isa_available(isa) ? isa : Isa::Scalar, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace duhamel::simd
