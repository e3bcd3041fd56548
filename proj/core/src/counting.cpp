#include "gapwise/counting.hpp"

#include <algorithm>
#include <string>

#include "gapwise/errors.hpp"
#include "shift_scan.hpp"

namespace gapwise {

std::string_view mode_name(GapMode m) {
  switch (m) {
    case GapMode::Plus: return "plus";
    case GapMode::Minus: return "minus";
    case GapMode::Full: return "full";
    case GapMode::Reduced: return "reduced";
    case GapMode::DivRestricted: return "div";
  }
  throw InternalError("unknown mode");
}

GapMode parse_mode(std::string_view name) {
  for (GapMode m : kAllModes)
    if (mode_name(m) == name) return m;
  if (name == "div_restricted") return GapMode::DivRestricted;
  throw DomainError("unknown mode '" + std::string(name) + "'; valid modes: plus, minus, full, reduced, div");
}

std::vector<CoincidenceCount> count_batch(std::span<const GapQuery> queries, const RunOptions& opts) {
  std::vector<CoincidenceCount> out(queries.size());
  std::vector<bool> done(queries.size(), false);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < queries.size(); ++j) {
      if (!done[j] && queries[j].func == queries[i].func) {
        group.push_back(j);
        done[j] = true;
      }
    }
    detail::ScanPlan plan(queries[i].func);
    for (std::size_t j : group) plan.add_count(queries[j]);
    auto tables = plan.run(opts);
    for (std::size_t k = 0; k < group.size(); ++k) out[group[k]] = std::move(tables.counts[k]);
  }
  return out;
}

CoincidenceCount count(const GapQuery& q, const RunOptions& opts) {
  return count_batch(std::span<const GapQuery>(&q, 1), opts).front();
}

CoincidenceCount count_plus(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  return count({f, x, l, GapMode::Plus}, opts);
}
CoincidenceCount count_minus(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  return count({f, x, l, GapMode::Minus}, opts);
}
CoincidenceCount count_full(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  return count({f, x, l, GapMode::Full}, opts);
}
CoincidenceCount count_reduced(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  return count({f, x, l, GapMode::Reduced}, opts);
}
CoincidenceCount count_div_restricted(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  return count({f, x, l, GapMode::DivRestricted}, opts);
}

}  // namespace gapwise
