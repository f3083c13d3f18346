#pragma once

#include "duhamel/simd/kernels.hpp"

namespace duhamel::simd::detail {

const KernelTable& scalar_table();
#if defined(DUHAMEL_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace duhamel::simd::detail
