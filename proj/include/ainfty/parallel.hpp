#pragma once

#include <cstddef>
#include <functional>

namespace ainfty {

/// Worker budget: AINFTY_THREADS when set (clamped to [1, 64]), else the
/// hardware concurrency.
std::size_t thread_budget();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
/// the thread budget; callers must make iterations independent. Results must
/// not depend on the split, so reductions belong in the caller, merged in
/// index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ainfty
