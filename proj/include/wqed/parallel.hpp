#pragma once

#include <cstddef>
#include <functional>

namespace wqed {

// Global worker count used by the tensor fills and sweeps.  0 = number of
// hardware threads.  Reductions accumulate into per-index slots and are
// combined in index order, so results do not depend on the thread count.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs fn(i) for i in [0, count) on the worker pool.  Blocks until done.
// fn must only write to disjoint state per index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace wqed
