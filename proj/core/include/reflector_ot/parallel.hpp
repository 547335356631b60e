#pragma once

#include <cstddef>
#include <functional>

namespace reflector_ot {

/// Number of worker threads for data-parallel loops: hardware concurrency
/// capped by the REFLECTOR_OT_THREADS environment variable (>= 1).
int parallel_width();

/// Run fn(lo, hi) over a fixed, width-independent chunking of [begin, end).
/// Chunk boundaries do not depend on the thread count, so any output written
/// per-index is identical for every width.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace reflector_ot
