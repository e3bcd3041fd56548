#pragma once

// Single-pass engine behind the coincidence counts and correlation sums.
// One scan covers every shift l and every checkpoint x requested for one
// function, so a whole (x, l) grid costs a single walk over [1, max x].

#include <array>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/bounds.hpp"
#include "gapwise/counting.hpp"
#include "gapwise/parallel.hpp"

namespace gapwise::detail {

enum RawMode : int { kPlus = 0, kMinus = 1, kFull = 2, kDiv = 3, kRawModes = 4 };

struct Lane {
  u64 l = 1;
  // Largest x queried per raw mode, 0 when the mode is not needed.
  std::array<u64, kRawModes> x_max{};
  u64 x_corr = 0;
};

struct LaneResult {
  // counts[mode][k] = count over n <= checkpoints[k]
  std::array<std::vector<u64>, kRawModes> counts;
  std::array<std::vector<u64>, kRawModes> witnesses;
  std::vector<u128> s1;
};

struct ShiftScanResult {
  std::vector<u64> checkpoints;
  std::vector<LaneResult> lanes;
  std::vector<u128> s2;

  std::size_t checkpoint_index(u64 x) const;
};

ShiftScanResult run_shift_scan(const FunctionId& f, const std::vector<Lane>& lanes, std::vector<u64> checkpoints,
                               const RunOptions& opts);

// Collects count and correlation queries for one function and answers them
// with a single run_shift_scan.
class ScanPlan {
 public:
  explicit ScanPlan(FunctionId f) : func_(std::move(f)) {}

  void add_count(const GapQuery& q);
  void add_correlation(u64 x, u64 l);

  ScanTables run(const RunOptions& opts) const;

 private:
  FunctionId func_;
  std::vector<GapQuery> counts_;
  std::vector<std::pair<u64, u64>> correlations_;
};

}  // namespace gapwise::detail
