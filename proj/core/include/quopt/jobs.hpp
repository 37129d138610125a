/**
 * @file jobs.hpp
 * @brief Deterministic fan-out of independent jobs over a worker pool.
 *
 * Jobs are pure functions of their index; results land in index order, so
 * the output is identical for any worker count.
 */

#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace quopt {

template <typename Result, typename Fn>
std::vector<Result> run_indexed_jobs(std::size_t job_count, int workers, Fn fn) {
  std::vector<std::optional<Result>> slots(job_count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < job_count; ++i)
      slots[i] = fn(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        std::size_t i = next.fetch_add(1);
        if (i >= job_count)
          break;
        try {
          slots[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error)
            error = std::current_exception();
          failed = true;
        }
      }
    };

    std::vector<std::thread> pool;
    int thread_count = std::min<int>(workers, static_cast<int>(job_count));
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
    if (error)
      std::rethrow_exception(error);
  }

  std::vector<Result> results;
  results.reserve(job_count);
  for (auto &slot : slots)
    results.push_back(std::move(*slot));
  return results;
}

} // namespace quopt
