#pragma once

#include <functional>

namespace quench {

int hardware_threads();

/// Library-wide default worker count (hardware concurrency unless overridden).
int default_thread_count();
void set_default_thread_count(int n);  // n <= 0 restores the hardware default

/// Runs fn(0), ..., fn(n-1) on up to `threads` workers (0 = library default).
/// Callers that need deterministic results must write into index-addressed
/// slots and reduce sequentially afterwards; the schedule is unspecified.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace quench
