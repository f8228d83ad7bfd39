#include "dpbloom/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace dpbloom {

unsigned worker_count() {
  if (const char* env = std::getenv("DPBLOOM_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_chunks(uint64_t total,
                     const std::function<void(unsigned, uint64_t, uint64_t)>& fn,
                     unsigned workers) {
  if (workers == 0) workers = worker_count();
  workers = static_cast<unsigned>(
      std::min<uint64_t>(workers, std::max<uint64_t>(total, 1)));
  if (workers <= 1 || total == 0) {
    fn(0, 0, total);
    return;
  }

  const uint64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const uint64_t begin = std::min<uint64_t>(static_cast<uint64_t>(w) * chunk, total);
    const uint64_t end = std::min<uint64_t>(begin + chunk, total);
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace dpbloom
