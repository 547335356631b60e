#include "reflector_ot/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace reflector_ot {

int parallel_width() {
  int width = static_cast<int>(std::thread::hardware_concurrency());
  if (width < 1) width = 1;
  if (const char* env = std::getenv("REFLECTOR_OT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) width = std::min(width, cap);
  }
  return width;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t n = end > begin ? end - begin : 0;
  if (n == 0) return;
  const int width = parallel_width();
  if (width == 1 || n < 1024) {
    fn(begin, end);
    return;
  }
  // fixed chunk size independent of width
  const std::size_t chunk = std::max<std::size_t>(512, n / (4 * width));
  std::atomic<std::size_t> next{begin};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t lo = next.fetch_add(chunk);
      if (lo >= end) return;
      try {
        fn(lo, std::min(end, lo + chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(width - 1);
  for (int t = 1; t < width; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace reflector_ot
