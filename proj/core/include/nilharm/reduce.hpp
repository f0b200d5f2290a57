#pragma once

// Deterministic parallel sums. The index range is cut into fixed-size blocks
// independent of the thread count; each block is summed sequentially and the
// block partials are combined in index order, so the result is bit-identical
// for any number of worker threads.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace nilharm {

inline constexpr std::size_t kReduceBlock = 4096;

/// Worker threads used by the parallel loops; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(block_begin, block_end, block_index) over [0, n) in blocks of
/// `block` indices, spread across the configured threads.
void parallel_blocks(std::size_t n, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Runs body(i) for every i in [0, n); iterations must be independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Sum of term(i) over [0, n) with the fixed block reduction order.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, Term&& term) {
  if (n == 0) return T{};
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<T> partial(blocks, T{});
  parallel_blocks(n, kReduceBlock, [&](std::size_t b, std::size_t e, std::size_t k) {
    T s{};
    for (std::size_t i = b; i < e; ++i) s += term(i);
    partial[k] = s;
  });
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace nilharm
