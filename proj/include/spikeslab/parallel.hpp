#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spikeslab {

// Runs fn(0), ..., fn(jobs - 1) on at most `workers` threads, handing out
// indices through a shared counter.  Callers must write results into
// preallocated per-index slots so the outcome is independent of scheduling.
// The first exception stops index handout and is rethrown after the join.
template <typename Fn>
void parallel_for_index(std::size_t jobs, std::size_t workers, Fn&& fn) {
  if (jobs == 0) return;
  if (workers <= 1 || jobs == 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= jobs) break;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> threads;
  const std::size_t n_threads = workers < jobs ? workers : jobs;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(drain);
  for (auto& thread : threads) thread.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace spikeslab
