#include "nilharm/reduce.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace nilharm {

namespace {

std::atomic<unsigned> g_threads{1};

}  // namespace

void set_thread_count(unsigned n) {
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  g_threads.store(n);
}

unsigned thread_count() { return g_threads.load(); }

void parallel_blocks(std::size_t n, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t blocks = (n + block - 1) / block;
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(thread_count(), blocks));
  auto run = [&](std::size_t k) { body(k * block, std::min(n, (k + 1) * block), k); };
  if (workers <= 1) {
    for (std::size_t k = 0; k < blocks; ++k) run(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= blocks) return;
      try {
        run(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t block = std::max<std::size_t>(1, n / (8 * std::max(1u, thread_count())));
  parallel_blocks(n, block, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) body(i);
  });
}

}  // namespace nilharm
