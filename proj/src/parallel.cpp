#include "robin_fsi/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace robin_fsi {

int worker_count(int requested) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ROBIN_FSI_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = v;
  }
  if (requested > 0 && requested < n) n = requested;
  return n < 1 ? 1 : n;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < std::min(threads, n); ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace robin_fsi
