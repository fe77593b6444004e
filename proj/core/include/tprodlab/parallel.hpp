#pragma once

#include <cstddef>
#include <functional>

namespace tprod {

/// Worker count: TPRODLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n) across thread_count() workers. Each index is
/// visited exactly once; callers store results by index so the outcome does
/// not depend on scheduling. The first exception thrown is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tprod
