#pragma once

#include <functional>

namespace suace {

// Number of worker threads row-parallel loops will use. Resolution order:
// explicit override (set_thread_override), then the SUACE_THREADS environment
// variable, then 1. Zero and unset both mean single-threaded; results are
// identical at any thread count, threading only changes wall time.
int worker_thread_count();

// Force a thread count from code (0 restores environment/default lookup).
void set_thread_override(int threads);

// Run fn(y0, y1) over disjoint row ranges covering [0, rows). With one
// worker this is a plain call on the caller's thread.
void parallel_for_rows(int rows, const std::function<void(int, int)>& fn);

} // namespace suace
