#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace schauder::detail {

/// out[i] = fn(i) for i in [0, count), evaluated on up to hardware_concurrency
/// threads. Results are stored by index, so the output does not depend on
/// scheduling. The first exception thrown by fn is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(int count, Fn fn) {
  std::vector<T> out(static_cast<std::size_t>(std::max(0, count)));
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(1, count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace schauder::detail
