#pragma once

#include <cstddef>
#include <functional>

namespace grt {

// Worker cap: TENSOR_RADON_THREADS if set, else hardware concurrency.
int thread_count();

// Static block partition of [0, count) across workers. Chunks must not share
// mutable state.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& chunk);

} // namespace grt
