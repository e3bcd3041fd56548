#pragma once

// Flat CSV records for every report the tools emit. Column order is fixed;
// reals are written with 12 significant digits, and to_record() rounds to
// the same precision so a write/read cycle reproduces a record exactly.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/bounds.hpp"
#include "gapwise/counting.hpp"
#include "gapwise/extremal.hpp"
#include "gapwise/growth.hpp"

namespace gapwise::csv {

std::string format_real(double v);
double round12(double v);
std::string format_u128(u128 v);
u128 parse_u128(std::string_view s);

struct CountRecord {
  std::string func, mode;
  u64 x = 0, l = 0, count = 0;
  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

struct WitnessRecord {
  std::string func, mode;
  u64 x = 0, l = 0, n = 0;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct ProfileRecord {
  std::string func, envelope;
  std::optional<double> c_param;
  u64 n0 = 0, x = 0;
  double c_emp = 0.0;
  u64 argmax_n = 0;
  friend bool operator==(const ProfileRecord&, const ProfileRecord&) = default;
};

struct BoundRecord {
  std::string func, formula;
  std::optional<double> c_param;
  u64 x = 0, l = 0;
  std::optional<u64> count;
  std::optional<double> bound, ratio;
  std::string status;
  friend bool operator==(const BoundRecord&, const BoundRecord&) = default;
};

struct ExtremalRecord {
  std::string statistic;
  u64 n0 = 0, x = 0;
  double extreme = 0.0;
  u64 arg_n = 0, violation_count = 0;
  friend bool operator==(const ExtremalRecord&, const ExtremalRecord&) = default;
};

struct CorrelationRecord {
  std::string func;
  u64 x = 0, l = 0;
  u128 s1 = 0, s2 = 0;
  double ratio = 0.0;
  friend bool operator==(const CorrelationRecord&, const CorrelationRecord&) = default;
};

struct ValueRecord {
  u64 n = 0, value = 0;
  friend bool operator==(const ValueRecord&, const ValueRecord&) = default;
};

struct ViolationRecord {
  u64 n = 0;
  std::string inequality;
  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

CountRecord to_record(const CoincidenceCount& c);
std::vector<WitnessRecord> witness_records(const CoincidenceCount& c);
ProfileRecord to_record(const GrowthProfile& p);
std::vector<BoundRecord> to_records(const BoundReport& r);
ExtremalRecord to_record(const ExtremalScan& s);
CorrelationRecord to_record(const FunctionId& f, const Correlation& c);
std::vector<ValueRecord> to_records(const ValueWindow& w);
ViolationRecord to_record(const ExactViolation& v);

void write(std::ostream& out, std::span<const CountRecord> rows);
void write(std::ostream& out, std::span<const WitnessRecord> rows);
void write(std::ostream& out, std::span<const ProfileRecord> rows);
void write(std::ostream& out, std::span<const BoundRecord> rows);
void write(std::ostream& out, std::span<const ExtremalRecord> rows);
void write(std::ostream& out, std::span<const CorrelationRecord> rows);
void write(std::ostream& out, std::span<const ValueRecord> rows);
void write(std::ostream& out, std::span<const ViolationRecord> rows);
// Tab-separated bound rows with status ok, for plotting tools.
void write_plot_data(std::ostream& out, std::span<const BoundRecord> rows);

// Readers check the header and throw FormatError on malformed input.
std::vector<CountRecord> read_counts(std::istream& in);
std::vector<WitnessRecord> read_witnesses(std::istream& in);
std::vector<ProfileRecord> read_profiles(std::istream& in);
std::vector<BoundRecord> read_bounds(std::istream& in);
std::vector<ExtremalRecord> read_extremals(std::istream& in);
std::vector<CorrelationRecord> read_correlations(std::istream& in);
std::vector<ValueRecord> read_values(std::istream& in);

}  // namespace gapwise::csv
