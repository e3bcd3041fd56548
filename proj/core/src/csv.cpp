#include "gapwise/csv.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "gapwise/errors.hpp"

namespace gapwise::csv {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

std::string format_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

u128 parse_u128(std::string_view s) {
  if (s.empty()) throw FormatError("empty integer field");
  u128 v = 0;
  const u128 max = ~u128{0};
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw FormatError("malformed integer '" + std::string(s) + "'");
    const unsigned d = static_cast<unsigned>(ch - '0');
    if (v > (max - d) / 10) throw FormatError("integer '" + std::string(s) + "' outside 128 bits");
    v = v * 10 + d;
  }
  return v;
}

namespace {

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }
std::optional<double> opt_round(const std::optional<double>& v) {
  return v ? std::optional<double>(round12(*v)) : std::nullopt;
}

// Minimal line-oriented reader: fixed header, comma (or tab) separated.
class Reader {
 public:
  Reader(std::istream& in, std::string_view header) : in_(in) {
    std::string line;
    if (!std::getline(in_, line)) throw FormatError("missing header");
    if (line != header) throw FormatError("expected header '" + std::string(header) + "', got '" + line + "'");
    columns_ = split(line).size();
  }

  bool next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (line.empty()) continue;
      fields_ = split(line);
      if (fields_.size() != columns_)
        throw FormatError("line " + std::to_string(lineno_) + ": expected " + std::to_string(columns_) + " fields");
      return true;
    }
    return false;
  }

  const std::string& str(std::size_t i) const { return fields_[i]; }

  u64 u(std::size_t i) const {
    const std::string& s = fields_[i];
    u64 v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(i);
    return v;
  }

  std::optional<u64> opt_u(std::size_t i) const {
    if (fields_[i].empty()) return std::nullopt;
    return u(i);
  }

  double real(std::size_t i) const {
    const std::string& s = fields_[i];
    if (s.empty()) fail(i);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail(i);
    return v;
  }

  std::optional<double> opt_real(std::size_t i) const {
    if (fields_[i].empty()) return std::nullopt;
    return real(i);
  }

  u128 big(std::size_t i) const { return parse_u128(fields_[i]); }

 private:
  [[noreturn]] void fail(std::size_t i) const {
    throw FormatError("line " + std::to_string(lineno_) + ": malformed field '" + fields_[i] + "'");
  }

  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out(1);
    for (char ch : line) {
      if (ch == ',')
        out.emplace_back();
      else
        out.back() += ch;
    }
    return out;
  }

  std::istream& in_;
  std::size_t columns_ = 0;
  std::size_t lineno_ = 1;
  std::vector<std::string> fields_;
};

constexpr std::string_view kCountHeader = "func,mode,x,l,count";
constexpr std::string_view kWitnessHeader = "func,mode,x,l,n";
constexpr std::string_view kProfileHeader = "func,envelope,c_param,n0,x,c_emp,argmax_n";
constexpr std::string_view kBoundHeader = "func,formula,c_param,x,l,count,bound,ratio,status";
constexpr std::string_view kExtremalHeader = "statistic,n0,x,extreme,arg_n,violation_count";
constexpr std::string_view kCorrelationHeader = "func,x,l,s1,s2,ratio";
constexpr std::string_view kValueHeader = "n,value";
constexpr std::string_view kViolationHeader = "n,inequality";

}  // namespace

CountRecord to_record(const CoincidenceCount& c) {
  return {c.query.func.name(), std::string(mode_name(c.query.mode)), c.query.x, c.query.l, c.count};
}

std::vector<WitnessRecord> witness_records(const CoincidenceCount& c) {
  std::vector<WitnessRecord> out;
  for (u64 n : c.witnesses)
    out.push_back({c.query.func.name(), std::string(mode_name(c.query.mode)), c.query.x, c.query.l, n});
  return out;
}

ProfileRecord to_record(const GrowthProfile& p) {
  return {p.func.name(),
          p.envelope.name(),
          p.envelope.has_param() ? std::optional<double>(round12(p.envelope.c)) : std::nullopt,
          p.n0,
          p.x,
          round12(p.c_emp),
          p.argmax_n};
}

std::vector<BoundRecord> to_records(const BoundReport& r) {
  std::vector<BoundRecord> out;
  for (const BoundRow& row : r.rows)
    out.push_back({r.func.name(), r.formula.name(), opt_round(r.formula.param()), row.x, row.l, row.count,
                   opt_round(row.bound), opt_round(row.ratio), std::string(status_name(row.status))});
  return out;
}

ExtremalRecord to_record(const ExtremalScan& s) {
  return {std::string(statistic_name(s.statistic)), s.n0, s.x, round12(s.extreme), s.arg_n, s.violations.size()};
}

CorrelationRecord to_record(const FunctionId& f, const Correlation& c) {
  return {f.name(), c.x, c.l, c.s1, c.s2, round12(c.ratio)};
}

std::vector<ValueRecord> to_records(const ValueWindow& w) {
  std::vector<ValueRecord> out;
  out.reserve(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i) out.push_back({w.start + i, w.values[i]});
  return out;
}

ViolationRecord to_record(const ExactViolation& v) { return {v.n, std::string(exact_check_name(v.check))}; }

void write(std::ostream& out, std::span<const CountRecord> rows) {
  out << kCountHeader << '\n';
  for (const auto& r : rows) out << r.func << ',' << r.mode << ',' << r.x << ',' << r.l << ',' << r.count << '\n';
}

void write(std::ostream& out, std::span<const WitnessRecord> rows) {
  out << kWitnessHeader << '\n';
  for (const auto& r : rows) out << r.func << ',' << r.mode << ',' << r.x << ',' << r.l << ',' << r.n << '\n';
}

void write(std::ostream& out, std::span<const ProfileRecord> rows) {
  out << kProfileHeader << '\n';
  for (const auto& r : rows)
    out << r.func << ',' << r.envelope << ',' << opt_real(r.c_param) << ',' << r.n0 << ',' << r.x << ','
        << format_real(r.c_emp) << ',' << r.argmax_n << '\n';
}

namespace {

void write_bound_rows(std::ostream& out, std::span<const BoundRecord> rows, char sep, bool ok_only) {
  for (const auto& r : rows) {
    if (ok_only && r.status != "ok") continue;
    out << r.func << sep << r.formula << sep << opt_real(r.c_param) << sep << r.x << sep << r.l << sep
        << (r.count ? std::to_string(*r.count) : std::string()) << sep << opt_real(r.bound) << sep
        << opt_real(r.ratio) << sep << r.status << '\n';
  }
}

}  // namespace

void write(std::ostream& out, std::span<const BoundRecord> rows) {
  out << kBoundHeader << '\n';
  write_bound_rows(out, rows, ',', false);
}

void write_plot_data(std::ostream& out, std::span<const BoundRecord> rows) {
  std::string header(kBoundHeader);
  for (char& ch : header)
    if (ch == ',') ch = '\t';
  out << header << '\n';
  write_bound_rows(out, rows, '\t', true);
}

void write(std::ostream& out, std::span<const ExtremalRecord> rows) {
  out << kExtremalHeader << '\n';
  for (const auto& r : rows)
    out << r.statistic << ',' << r.n0 << ',' << r.x << ',' << format_real(r.extreme) << ',' << r.arg_n << ','
        << r.violation_count << '\n';
}

void write(std::ostream& out, std::span<const CorrelationRecord> rows) {
  out << kCorrelationHeader << '\n';
  for (const auto& r : rows)
    out << r.func << ',' << r.x << ',' << r.l << ',' << format_u128(r.s1) << ',' << format_u128(r.s2) << ','
        << format_real(r.ratio) << '\n';
}

void write(std::ostream& out, std::span<const ValueRecord> rows) {
  out << kValueHeader << '\n';
  for (const auto& r : rows) out << r.n << ',' << r.value << '\n';
}

void write(std::ostream& out, std::span<const ViolationRecord> rows) {
  out << kViolationHeader << '\n';
  for (const auto& r : rows) out << r.n << ',' << r.inequality << '\n';
}

std::vector<CountRecord> read_counts(std::istream& in) {
  Reader rd(in, kCountHeader);
  std::vector<CountRecord> out;
  while (rd.next()) out.push_back({rd.str(0), rd.str(1), rd.u(2), rd.u(3), rd.u(4)});
  return out;
}

std::vector<WitnessRecord> read_witnesses(std::istream& in) {
  Reader rd(in, kWitnessHeader);
  std::vector<WitnessRecord> out;
  while (rd.next()) out.push_back({rd.str(0), rd.str(1), rd.u(2), rd.u(3), rd.u(4)});
  return out;
}

std::vector<ProfileRecord> read_profiles(std::istream& in) {
  Reader rd(in, kProfileHeader);
  std::vector<ProfileRecord> out;
  while (rd.next()) out.push_back({rd.str(0), rd.str(1), rd.opt_real(2), rd.u(3), rd.u(4), rd.real(5), rd.u(6)});
  return out;
}

std::vector<BoundRecord> read_bounds(std::istream& in) {
  Reader rd(in, kBoundHeader);
  std::vector<BoundRecord> out;
  while (rd.next())
    out.push_back({rd.str(0), rd.str(1), rd.opt_real(2), rd.u(3), rd.u(4), rd.opt_u(5), rd.opt_real(6),
                   rd.opt_real(7), rd.str(8)});
  return out;
}

std::vector<ExtremalRecord> read_extremals(std::istream& in) {
  Reader rd(in, kExtremalHeader);
  std::vector<ExtremalRecord> out;
  while (rd.next()) out.push_back({rd.str(0), rd.u(1), rd.u(2), rd.real(3), rd.u(4), rd.u(5)});
  return out;
}

std::vector<CorrelationRecord> read_correlations(std::istream& in) {
  Reader rd(in, kCorrelationHeader);
  std::vector<CorrelationRecord> out;
  while (rd.next()) out.push_back({rd.str(0), rd.u(1), rd.u(2), rd.big(3), rd.big(4), rd.real(5)});
  return out;
}

std::vector<ValueRecord> read_values(std::istream& in) {
  Reader rd(in, kValueHeader);
  std::vector<ValueRecord> out;
  while (rd.next()) out.push_back({rd.u(0), rd.u(1)});
  return out;
}

}  // namespace gapwise::csv
