#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace mih {

// Process-wide worker cap; the CLI sets it from --max-threads.
int max_threads();
void set_max_threads(int n);

namespace detail {
inline thread_local bool in_parallel = false;
}

// Index-parallel loop with deterministic output: the body writes only to
// its own index.  Serial for small ranges and inside nested calls.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  int workers = std::min(max_threads(), n);
  if (workers <= 1 || n < 2 || detail::in_parallel) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next(0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      detail::in_parallel = true;
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace mih
