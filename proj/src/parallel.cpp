#include "salem/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace salem {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::size_t chunk_count(std::size_t n) {
  return std::min<std::size_t>(n, thread_count());
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  std::size_t chunks = chunk_count(n);
  if (chunks <= 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    workers.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace salem
