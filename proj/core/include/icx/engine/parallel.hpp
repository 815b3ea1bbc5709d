#pragma once

#include <cstddef>
#include <functional>

namespace icx::engine {

// Worker count: hardware concurrency, capped by ICX_THREADS when set.
std::size_t thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads. Exceptions are
// rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace icx::engine
