#include "quench/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace quench {

namespace {
std::atomic<int> g_default_threads{0};
}

int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

int default_thread_count() {
  int n = g_default_threads.load();
  return n > 0 ? n : hardware_threads();
}

void set_default_thread_count(int n) { g_default_threads.store(n); }

void parallel_for(int n, const std::function<void(int)>& fn, int threads) {
  if (threads <= 0) threads = default_thread_count();
  if (threads > n) threads = n;
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace quench
