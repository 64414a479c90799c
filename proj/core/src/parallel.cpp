#include "geocycle/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace geocycle {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("GEOCYCLE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<unsigned>(v);
  }
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(threads, n);
  pool.reserve(count - 1);
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace geocycle
