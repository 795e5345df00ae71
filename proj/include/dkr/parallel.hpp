#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dkr {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. workers <= 0
/// means hardware concurrency. Tasks are claimed through an atomic counter,
/// so the assignment of tasks to threads is schedule-dependent; callers must
/// only write to per-task slots. The first exception (lowest task index) is
/// rethrown after all threads join; once any task fails, unclaimed tasks are
/// skipped.
template <typename Fn>
void parallel_for(int workers, std::size_t count, Fn&& fn) {
  if (count == 0) return;
  std::size_t n_threads = workers > 0 ? static_cast<std::size_t>(workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, count);

  if (n_threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(count);

  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();

  if (failed.load()) {
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
}

}  // namespace dkr
