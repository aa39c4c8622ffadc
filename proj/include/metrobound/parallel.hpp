#pragma once

#include <cstddef>
#include <functional>

namespace metrobound {

/// Worker count: METROBOUND_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n) across thread_count() workers. Results must be
/// written to per-index slots; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace metrobound
