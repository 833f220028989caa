#pragma once

#include <cstddef>
#include <functional>

namespace ctreg {

/// Caps the number of worker threads used by parallel_for. 0 selects the
/// hardware concurrency. Results never depend on this value: every parallel
/// loop in the library writes each output cell exactly once.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n), split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ctreg
