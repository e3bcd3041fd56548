#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "gapwise/arith.hpp"

namespace gapwise {

// Execution knobs shared by every range scan. None of them may change a
// result; they only change how the range is cut up and who works on it.
struct RunOptions {
  unsigned workers = 1;
  std::size_t window_size = std::size_t{1} << 16;
  std::size_t witness_cap = 32;
  Limits limits{};
};

struct Piece {
  u64 lo;
  u64 hi;  // inclusive
};

// Cuts [lo, hi] into consecutive pieces of at most `size` entries, also
// breaking at every cut point in `breaks` (a piece never straddles a break,
// i.e. each break value is the last element of some piece).
inline std::vector<Piece> split_range(u64 lo, u64 hi, std::size_t size, const std::vector<u64>& breaks = {}) {
  std::vector<Piece> out;
  if (lo > hi || size == 0) return out;
  std::vector<u64> cuts;
  for (u64 b : breaks)
    if (b >= lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(hi);
  u64 a = lo;
  for (u64 c : cuts) {
    while (a <= c) {
      const u64 b = (c - a >= size - 1) ? a + size - 1 : c;
      out.push_back({a, b});
      a = b + 1;
    }
  }
  return out;
}

// Runs fn(i) for i in [0, count) on `workers` threads and returns the results
// in index order. If several calls throw, the one with the smallest index is
// rethrown, so failures are as deterministic as results.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace gapwise
