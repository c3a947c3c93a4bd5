#pragma once

#include <cstddef>
#include <functional>

namespace qwalk {

// Worker count: QWALK_WORKERS env var if set, else hardware concurrency.
std::size_t default_workers();

// Runs fn(0..n-1) across `workers` threads (serially when workers <= 1).
// Tasks are claimed dynamically; callers must make results order-independent
// (e.g. write into a per-index slot).
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qwalk
