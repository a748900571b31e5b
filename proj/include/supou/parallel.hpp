#pragma once

#include <cstddef>
#include <functional>

namespace supou {

// Thread count resolution: SUPOU_THREADS env var wins, then the requested
// value, then hardware concurrency (requested <= 0 means auto).
int resolve_thread_count(int requested);

// Runs fn(0..n-1) on a worker pool. Work units are indexed, results must be
// written to per-index slots by the caller, so scheduling order never affects
// output. The first exception thrown by a worker is rethrown here.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace supou
