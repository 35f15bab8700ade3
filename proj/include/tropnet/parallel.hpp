#ifndef TROPNET_PARALLEL_HPP
#define TROPNET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace tropnet {

// Worker count used by parallel_for. Defaults to TROPNET_THREADS when set,
// otherwise 1. A value of 0 resets to that default.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

// Calls body(i) for i in [0, n). Each index runs exactly once; callers write
// results into slot i so output never depends on the schedule. If any call
// throws, the exception from the smallest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tropnet

#endif  // TROPNET_PARALLEL_HPP
