#pragma once

#include <cstddef>
#include <functional>

namespace holo {

/// Worker cap from HOLONOMY_THREADS; unset, 0 or unparsable means the
/// hardware concurrency.
std::size_t worker_count();

/// Runs body(k) for k in [0, count). Each k is executed exactly once; callers
/// write results into per-index slots so the outcome is order independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace holo
