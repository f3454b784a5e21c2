#include "banachlab/parallel.hpp"

#include <cstdlib>

namespace banach::par {
namespace {

int initial_workers() {
  if (const char* env = std::getenv("BANACHLAB_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 256);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

std::atomic<int>& workers() {
  static std::atomic<int> w{initial_workers()};
  return w;
}

}  // namespace

int worker_count() { return workers().load(std::memory_order_relaxed); }

void set_worker_count(int n) { workers().store(n < 1 ? 1 : n, std::memory_order_relaxed); }

}  // namespace banach::par
