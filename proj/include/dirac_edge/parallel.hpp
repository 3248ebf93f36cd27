#pragma once

#include <cstddef>
#include <functional>

namespace dirac_edge {

/// Worker count: DIRAC_EDGE_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are
/// disjoint, so bodies that only write their own indices give results that
/// do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dirac_edge
