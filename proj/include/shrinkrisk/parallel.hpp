#pragma once

#include <cstddef>
#include <functional>

namespace shrinkrisk {

// Maps requested == 0 to hardware concurrency, clamped to [1, 64].
int resolve_threads(int requested);

// Runs body(i) for every i in [0, count), distributing work items across
// `threads` workers via an atomic counter. Work items must only write to
// disjoint state; under that contract results are independent of the thread
// count. Exceptions from body are rethrown on the calling thread.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace shrinkrisk
