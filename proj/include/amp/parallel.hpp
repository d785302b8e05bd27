#pragma once

#include <cstddef>
#include <functional>

namespace amp {

/// Worker count honoring the AMP_THREADS environment variable (0 or unset
/// means hardware concurrency). Always at least 1.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; the
/// caller writes results into per-index slots so output order never depends
/// on scheduling. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace amp
