#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace reachlab::detail {

/// Worker count: REACHLAB_THREADS env var caps parallelism, 0 or unset = auto.
int max_threads();

/// Splits [0, n) into contiguous blocks, runs `block_fn(begin, end, block_index)`
/// on worker threads, and returns one result per block, ordered by block index.
/// Reductions over the returned vector are therefore deterministic regardless
/// of the number of workers. A worker exception is rethrown in the caller
/// (lowest block index wins).
template <typename T, typename BlockFn>
std::vector<T> parallel_blocks(std::size_t n, BlockFn block_fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n == 0 ? 1 : n);
  std::vector<T> results(workers == 0 ? 1 : workers);
  if (workers <= 1) {
    results[0] = block_fn(std::size_t{0}, n, std::size_t{0});
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, begin, end, w] {
      try {
        results[w] = block_fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

}  // namespace reachlab::detail
