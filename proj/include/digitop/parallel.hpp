#ifndef DIGITOP_PARALLEL_HPP_
#define DIGITOP_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace digitop {

/// DIGITOP_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t default_thread_count();

/// Calls fn(index, worker) for every index in [0, count) on up to `threads`
/// workers. Indices are handed out dynamically, so fn must not depend on
/// which worker runs it. The first exception thrown by fn is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, std::size_t{0});
    return;
  }
  threads = std::min(threads, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&](std::size_t worker) {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i, worker);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace digitop

#endif  // DIGITOP_PARALLEL_HPP_
