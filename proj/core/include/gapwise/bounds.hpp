#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/counting.hpp"
#include "gapwise/parallel.hpp"

namespace gapwise {

// Closed-form lower-bound shapes, with q = x/l as a real:
//   LogLog  (1/C) q / log log q
//   Const   q
//   PolyLog q (log log q)^c / log q
//   Log     (1/C) q / log q
//   Linear  (1/C) log q
enum class FormulaKind { LogLog, Const, PolyLog, Log, Linear };

struct BoundFormula {
  FormulaKind kind = FormulaKind::Const;
  double C = 1.0;
  double c = 1.0;

  // Smallest admissible q: 16 for LogLog and PolyLog, 3 otherwise.
  double q_min() const;
  std::string name() const;
  // The parameter that applies to this kind, if any.
  std::optional<double> param() const;
};

// Accepts loglog, const, polylog, log, linear. `param` is C, or c for polylog.
BoundFormula parse_formula(std::string_view name, double param = 1.0);

// phi, sigma -> LogLog with 1/C = e^-gamma; tau -> Const;
// omega -> PolyLog with c = 1; bigomega -> Log with 1/C = log 2.
BoundFormula preset_formula(Builtin b);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double bound_value(const BoundFormula& formula, double x_over_l);
double bound_value(const BoundFormula& formula, u64 x, u64 l);

enum class RowStatus { Ok, DomainError, CountError };
std::string_view status_name(RowStatus s);

struct BoundRow {
  u64 x = 0;
  u64 l = 0;
  std::optional<u64> count;
  std::optional<double> bound;
  std::optional<double> ratio;
  RowStatus status = RowStatus::Ok;
};

struct BoundReport {
  FunctionId func = Builtin::Phi;
  BoundFormula formula;
  std::vector<BoundRow> rows;  // sorted by (x, l)
  std::vector<std::string> notes;
};

// One row per grid point with count_plus against the formula. Rows whose
// point fails the formula guard or the domain cap are kept and marked.
BoundReport bound_report(const FunctionId& f, const BoundFormula& formula, std::vector<std::pair<u64, u64>> grid,
                         const RunOptions& opts = {});

// Same, reusing Plus counts already computed for some grid points.
BoundReport bound_report(const FunctionId& f, const BoundFormula& formula, std::vector<std::pair<u64, u64>> grid,
                         std::span<const CoincidenceCount> known, const RunOptions& opts = {});

struct Correlation {
  u64 x = 0;
  u64 l = 0;
  u128 s1 = 0;  // sum_{n<=x} f(n) f(n+l)
  u128 s2 = 0;  // sum_{n<=x} f(n)^2
  double ratio = 0.0;
};

// Counts and correlation sums for one function from a single walk over
// [1, max x]. Every query must name f.
struct ScanTables {
  std::vector<CoincidenceCount> counts;
  std::vector<Correlation> correlations;
};

ScanTables scan_tables(const FunctionId& f, std::span<const GapQuery> queries,
                       std::span<const std::pair<u64, u64>> correlation_points, const RunOptions& opts = {});

Correlation correlation_ratio(const FunctionId& f, u64 x, u64 l, const RunOptions& opts = {});
std::vector<Correlation> correlate_batch(const FunctionId& f, std::span<const std::pair<u64, u64>> points,
                                         const RunOptions& opts = {});

}  // namespace gapwise
