#pragma once

#include <cstddef>
#include <functional>

namespace geocycle {

/// Run fn(i) for i in [0, n) on up to hardware_concurrency threads (overridable
/// with the GEOCYCLE_THREADS environment variable). Results must be written to
/// per-index storage; callers reduce in index order afterwards, so outputs do
/// not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace geocycle
