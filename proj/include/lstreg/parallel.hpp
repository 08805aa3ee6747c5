#pragma once

#include <cstddef>
#include <functional>

namespace lstreg {

// Process-wide cap on worker threads (0 = hardware concurrency).
void set_max_threads(std::size_t n);
std::size_t max_threads();

// Runs body(i) for i in [0, count). Indices are handed out dynamically; the
// body must only write to slots owned by its index so results do not depend
// on scheduling. Exceptions are rethrown on the calling thread (lowest index).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lstreg
