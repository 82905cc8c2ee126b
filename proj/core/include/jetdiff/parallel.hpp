#pragma once

#include <cstddef>
#include <functional>

namespace jetdiff {

/// Worker count from JETDIFF_THREADS (default 1, clamped to [1, 64]).
std::size_t worker_count();

/// Runs body(i) for i in [0, n), split across worker_count() threads.
/// Each index is processed exactly once; results must be written to
/// per-index slots so the merge order stays deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jetdiff
