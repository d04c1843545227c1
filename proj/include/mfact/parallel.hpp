#pragma once

#include <cstddef>
#include <functional>

namespace mfact {

// Worker count from MFACT_THREADS (default 1).
unsigned worker_count();

// Calls body(i) for every i in [0, count). Indices are split into contiguous
// blocks, one per worker; callers write results by index, so the outcome does
// not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mfact
