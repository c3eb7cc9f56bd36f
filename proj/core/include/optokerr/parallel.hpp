#pragma once

#include <cstddef>
#include <functional>

namespace optokerr {

// 0 means "whatever the hardware reports".
unsigned resolve_threads(unsigned requested);

// Calls body(i) for i in [0, n). Work is split into contiguous blocks; every
// index is handled by exactly one thread, so results written per index do
// not depend on the thread count. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace optokerr
