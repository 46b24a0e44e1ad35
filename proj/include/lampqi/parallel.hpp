#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lampqi {

/// Splits [0, total) into `chunks` contiguous ranges, runs `fn(begin, end)`
/// on each (concurrently when chunks > 1) and returns the results in range
/// order, so the merged output never depends on scheduling.
template <class Fn>
auto run_chunked(std::size_t total, unsigned chunks, Fn fn) {
  using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
  chunks = std::max(1u, chunks);
  if (total < chunks) chunks = std::max<std::size_t>(1, total);
  std::vector<Result> results(chunks);
  auto bounds = [&](unsigned c) { return total * c / chunks; };
  if (chunks == 1) {
    results[0] = fn(0, total);
    return results;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    threads.emplace_back([&, c] {
      try {
        results[c] = fn(bounds(c), bounds(c + 1));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace lampqi
