#pragma once

#include <cstddef>
#include <functional>

namespace currents_lab {

// Worker count: CURRENTS_LAB_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Bodies must
// write only to their own slot. If any body throws, the exception from the
// lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace currents_lab
