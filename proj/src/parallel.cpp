#include "fockdiv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fockdiv::parallel {

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_workers(unsigned n) { g_workers.store(n); }

unsigned workers() {
  unsigned n = g_workers.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t w = std::min<std::size_t>(workers(), n);
  if (w <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&](std::size_t t) {
    const std::size_t b = n * t / w, e = n * (t + 1) / w;
    try {
      body(b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  for (std::size_t t = 1; t < w; ++t) pool.emplace_back(run, t);
  run(0);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace fockdiv::parallel
