#pragma once

#include <cstddef>
#include <functional>

namespace rcqm {

/// Worker count: RCQM_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Splits [0, n) into contiguous chunks, one per worker. body(begin, end)
/// must only write to indices in its own range.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace rcqm
