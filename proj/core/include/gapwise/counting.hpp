#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/parallel.hpp"

namespace gapwise {

// Which coincidence set to count, for gap l and bound x:
//   Plus           #{1 <= n <= x : f(n) = f(n+l)}
//   Minus          #{l+1 <= n <= x : f(n-l) = f(n)}
//   Full           #{l+1 <= n <= x : f(n-l) = f(n) = f(n+l)}
//   Reduced        #{1 <= m <= floor(x/l) : f(m) = f(m+1)}
//   DivRestricted  #{1 <= n <= x : l | n, f(n) = f(n+l)}
enum class GapMode { Plus, Minus, Full, Reduced, DivRestricted };

inline constexpr GapMode kAllModes[] = {GapMode::Plus, GapMode::Minus, GapMode::Full, GapMode::Reduced,
                                        GapMode::DivRestricted};

std::string_view mode_name(GapMode m);
// Throws DomainError for unknown names.
GapMode parse_mode(std::string_view name);

struct GapQuery {
  FunctionId func = Builtin::Phi;
  u64 x = 1;
  u64 l = 1;
  GapMode mode = GapMode::Plus;
};

struct CoincidenceCount {
  GapQuery query;
  u64 count = 0;
  // First qualifying n in ascending order, at most RunOptions::witness_cap.
  // For Reduced these are the m values.
  std::vector<u64> witnesses;
};

// Answers all queries, sharing one scan per function. Results are in query
// order and do not depend on opts.workers or opts.window_size.
std::vector<CoincidenceCount> count_batch(std::span<const GapQuery> queries, const RunOptions& opts = {});

CoincidenceCount count(const GapQuery& q, const RunOptions& opts = {});

CoincidenceCount count_plus(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});
CoincidenceCount count_minus(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});
CoincidenceCount count_full(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});
CoincidenceCount count_reduced(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});
CoincidenceCount count_div_restricted(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});

}  // namespace gapwise
