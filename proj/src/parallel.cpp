#include "coarselab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace coarselab {

std::size_t thread_budget() {
  static const std::size_t budget = [] {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("COARSE_LAB_THREADS")) {
      try {
        long v = std::stol(env);
        if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
      } catch (...) {
        // unparsable value: keep the hardware default
      }
    }
    return n;
  }();
  return budget;
}

namespace {
// below this, thread spawn overhead dominates any win
constexpr std::size_t kParallelThreshold = 2048;
}  // namespace

std::size_t chunk_count(std::size_t n) {
  if (n < kParallelThreshold) return 1;
  return std::max<std::size_t>(1, std::min(thread_budget(), n));
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t chunks = chunk_count(n);
  if (chunks == 1) {
    fn(0, n, 0);
    return;
  }
  const std::size_t step = (n + chunks - 1) / chunks;
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(n, begin + step);
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace coarselab
