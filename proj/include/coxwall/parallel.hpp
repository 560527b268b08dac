#ifndef COXWALL_PARALLEL_HPP
#define COXWALL_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace coxwall {

/// Splits [0, n) into `workers` contiguous chunks, runs fn(begin, end) on each
/// and returns the per-chunk results in chunk order, so any order-respecting
/// merge of them is independent of the worker count.
template <class Fn>
auto parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
  workers = std::max(1u, workers);
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = n * c / chunks, end = n * (c + 1) / chunks;
    try {
      results[c] = fn(begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run, c);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace coxwall

#endif  // COXWALL_PARALLEL_HPP
