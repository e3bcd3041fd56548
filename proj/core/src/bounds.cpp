#include "gapwise/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "gapwise/counting.hpp"
#include "gapwise/errors.hpp"
#include "shift_scan.hpp"

namespace gapwise {

double BoundFormula::q_min() const {
  return (kind == FormulaKind::LogLog || kind == FormulaKind::PolyLog) ? 16.0 : 3.0;
}

std::string BoundFormula::name() const {
  switch (kind) {
    case FormulaKind::LogLog: return "loglog";
    case FormulaKind::Const: return "const";
    case FormulaKind::PolyLog: return "polylog";
    case FormulaKind::Log: return "log";
    case FormulaKind::Linear: return "linear";
  }
  throw InternalError("unknown formula");
}

std::optional<double> BoundFormula::param() const {
  switch (kind) {
    case FormulaKind::Const: return std::nullopt;
    case FormulaKind::PolyLog: return c;
    default: return C;
  }
}

BoundFormula parse_formula(std::string_view name, double param) {
  if (!(param > 0.0) || !std::isfinite(param)) throw DomainError("formula parameter must be positive");
  if (name == "loglog") return {FormulaKind::LogLog, param, 1.0};
  if (name == "const") return {FormulaKind::Const, 1.0, 1.0};
  if (name == "polylog") return {FormulaKind::PolyLog, 1.0, param};
  if (name == "log") return {FormulaKind::Log, param, 1.0};
  if (name == "linear") return {FormulaKind::Linear, param, 1.0};
  throw DomainError("unknown formula '" + std::string(name) + "'; valid: preset, loglog, const, polylog, log, linear");
}

BoundFormula preset_formula(Builtin b) {
  switch (b) {
    case Builtin::Phi:
    case Builtin::Sigma: return {FormulaKind::LogLog, std::exp(kEulerGamma), 1.0};
    case Builtin::Tau: return {FormulaKind::Const, 1.0, 1.0};
    case Builtin::OmegaDistinct: return {FormulaKind::PolyLog, 1.0, 1.0};
    case Builtin::OmegaMult: return {FormulaKind::Log, 1.0 / std::log(2.0), 1.0};
  }
  throw InternalError("unknown builtin");
}

double bound_value(const BoundFormula& formula, double q) {
  if (!(q >= formula.q_min()))
    throw DomainError(formula.name() + " bound needs x/l >= " + std::to_string(formula.q_min()) + ", got " +
                      std::to_string(q));
  switch (formula.kind) {
    case FormulaKind::LogLog: return q / std::log(std::log(q)) / formula.C;
    case FormulaKind::Const: return q;
    case FormulaKind::PolyLog: return q * std::pow(std::log(std::log(q)), formula.c) / std::log(q);
    case FormulaKind::Log: return q / std::log(q) / formula.C;
    case FormulaKind::Linear: return std::log(q) / formula.C;
  }
  throw InternalError("unknown formula");
}

double bound_value(const BoundFormula& formula, u64 x, u64 l) {
  if (l == 0) throw DomainError("the gap l must be >= 1");
  return bound_value(formula, static_cast<double>(x) / static_cast<double>(l));
}

std::string_view status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::DomainError: return "domain_error";
    case RowStatus::CountError: return "count_error";
  }
  throw InternalError("unknown status");
}

BoundReport bound_report(const FunctionId& f, const BoundFormula& formula, std::vector<std::pair<u64, u64>> grid,
                         const RunOptions& opts) {
  return bound_report(f, formula, std::move(grid), {}, opts);
}

BoundReport bound_report(const FunctionId& f, const BoundFormula& formula, std::vector<std::pair<u64, u64>> grid,
                         std::span<const CoincidenceCount> known, const RunOptions& opts) {
  std::sort(grid.begin(), grid.end());
  BoundReport report{f, formula, {}, {}};
  if (f.is_builtin() && f.builtin() == Builtin::Tau && formula.kind == FormulaKind::Const)
    report.notes.push_back(
        "tau is multiplicative but not completely multiplicative; the bounded-ratio bound is stated for completely "
        "multiplicative g with g(st) <= g(s)g(t), and also quoted for merely multiplicative g. Rows are measurements "
        "only.");

  std::vector<GapQuery> queries;
  std::vector<std::size_t> query_row;
  for (const auto& [x, l] : grid) {
    BoundRow row{x, l, std::nullopt, std::nullopt, std::nullopt, RowStatus::Ok};
    const bool countable = x >= 1 && l >= 1 && x <= opts.limits.domain_cap && l <= opts.limits.domain_cap - x;
    auto cached = std::find_if(known.begin(), known.end(), [&](const CoincidenceCount& c) {
      return c.query.func == f && c.query.mode == GapMode::Plus && c.query.x == x && c.query.l == l;
    });
    if (countable && cached != known.end()) {
      row.count = cached->count;
    } else if (countable) {
      queries.push_back({f, x, l, GapMode::Plus});
      query_row.push_back(report.rows.size());
    } else {
      row.status = RowStatus::CountError;
    }
    report.rows.push_back(row);
  }

  const auto counts = count_batch(queries, opts);
  for (std::size_t i = 0; i < counts.size(); ++i) report.rows[query_row[i]].count = counts[i].count;

  for (BoundRow& row : report.rows) {
    if (row.status != RowStatus::Ok) continue;
    try {
      row.bound = bound_value(formula, row.x, row.l);
      row.ratio = static_cast<double>(*row.count) / *row.bound;
    } catch (const DomainError&) {
      row.status = RowStatus::DomainError;
    }
  }
  return report;
}

ScanTables scan_tables(const FunctionId& f, std::span<const GapQuery> queries,
                       std::span<const std::pair<u64, u64>> correlation_points, const RunOptions& opts) {
  detail::ScanPlan plan(f);
  for (const GapQuery& q : queries) plan.add_count(q);
  for (const auto& [x, l] : correlation_points) plan.add_correlation(x, l);
  return plan.run(opts);
}

std::vector<Correlation> correlate_batch(const FunctionId& f, std::span<const std::pair<u64, u64>> points,
                                         const RunOptions& opts) {
  RunOptions scan_opts = opts;
  scan_opts.witness_cap = 0;
  return scan_tables(f, {}, points, scan_opts).correlations;
}

Correlation correlation_ratio(const FunctionId& f, u64 x, u64 l, const RunOptions& opts) {
  const std::pair<u64, u64> p{x, l};
  return correlate_batch(f, std::span(&p, 1), opts).front();
}

}  // namespace gapwise
