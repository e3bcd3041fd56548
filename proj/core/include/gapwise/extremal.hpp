#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/parallel.hpp"

namespace gapwise {

// Exact inequalities that hold for every n >= 2.
enum class ExactCheck {
  PhiBelowN,          // phi(n) < n
  SigmaAtLeastN,      // sigma(n) >= n
  TauAtLeastTwo,      // tau(n) >= 2
  OmegaAtLeastOne,    // omega(n) >= 1
  BigOmegaAtLeastOne, // Omega(n) >= 1
  BigOmegaLog2Bound,  // 2^Omega(n) <= n
  OmegaBelowBigOmega, // omega(n) <= Omega(n)
  TauLowerBridge,     // 2^omega(n) <= tau(n)
  TauUpperBridge,     // tau(n) <= 2^Omega(n)
};

std::string_view exact_check_name(ExactCheck c);

struct ExactViolation {
  u64 n;
  ExactCheck check;
  friend bool operator==(const ExactViolation&, const ExactViolation&) = default;
};

// Every violation over 2 <= n <= x, ascending by n. Expected to be empty.
std::vector<ExactViolation> check_exact(u64 x, const RunOptions& opts = {});

enum class ExtremalStatistic {
  MinPhiRatio,     // phi(n) log log n / n, reference e^-gamma
  MaxSigmaRatio,   // sigma(n) / (n log log n), reference e^gamma
  MaxTauExponent,  // log tau(n) log log n / log n, reference log 2
  MaxOmegaRatio,   // omega(n) log log n / log n, no reference
};

inline constexpr ExtremalStatistic kAllStatistics[] = {
    ExtremalStatistic::MinPhiRatio, ExtremalStatistic::MaxSigmaRatio, ExtremalStatistic::MaxTauExponent,
    ExtremalStatistic::MaxOmegaRatio};

std::string_view statistic_name(ExtremalStatistic s);
ExtremalStatistic parse_statistic(std::string_view name);

struct ExtremalScan {
  ExtremalStatistic statistic;
  u64 n0 = 16;
  u64 x = 17;
  double extreme = 0.0;
  u64 arg_n = 0;
  // n on the wrong side of the reference constant: below e^-gamma for
  // MinPhiRatio, at or above e^gamma for MaxSigmaRatio, above log 2 for
  // MaxTauExponent. Always empty for MaxOmegaRatio.
  std::vector<u64> violations;
};

ExtremalScan scan_extremal(ExtremalStatistic stat, u64 n0, u64 x, const RunOptions& opts = {});

}  // namespace gapwise
