#pragma once

#include <functional>

namespace glmcf {

/// Thread budget: GLMCF_THREADS when set (clamped to >= 1), otherwise the
/// hardware concurrency.
int max_threads();

/// Run f(i) for i in [0, n). Work is split into contiguous chunks, one per
/// thread, so results written per index are identical for every thread
/// count. Small loops run inline.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace glmcf
