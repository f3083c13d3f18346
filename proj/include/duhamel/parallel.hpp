#pragma once

#include <cstddef>
#include <functional>

namespace duhamel {

/// Worker count used by parallel_for. Initialised from DUHAMEL_THREADS, default 1.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Indices are split into contiguous static
/// chunks, so any per-index output is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace duhamel
