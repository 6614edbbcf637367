#pragma once

// Trial-parallel map-reduce. Work is split into fixed-size chunks pulled from
// an atomic counter; each worker folds into its own accumulator and the
// accumulators are merged at the end. Results are worker-count independent
// as long as `merge` is commutative and associative.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stbc {

/// Hardware concurrency, at least 1.
int default_workers();

/// Resolves a user-supplied worker count (<= 0 means default).
int resolve_workers(int requested);

template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::int64_t count, int workers, const Acc& init, Body body, Merge merge, std::int64_t chunk = 256) {
  workers = resolve_workers(workers);
  if (count <= 0) return init;
  const std::int64_t chunks = (count + chunk - 1) / chunk;
  workers = static_cast<int>(std::min<std::int64_t>(workers, chunks));
  std::vector<Acc> accs(workers, init);
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&](int w) {
    try {
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= chunks) break;
        const std::int64_t end = std::min(count, (c + 1) * chunk);
        for (std::int64_t i = c * chunk; i < end; ++i) body(i, accs[w]);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(chunks);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  Acc out = init;
  for (const auto& a : accs) merge(out, a);
  return out;
}

}  // namespace stbc
