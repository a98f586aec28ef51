#pragma once

#include <functional>

namespace delegation {

// Runs fn(0..n-1) across up to `jobs` threads (block partition). Results must
// be written to per-index slots; assembly order is the caller's index order,
// so output is independent of the job count.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

} // namespace delegation
