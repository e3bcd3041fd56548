#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gapwise/csv.hpp"
#include "gapwise/errors.hpp"

using namespace gapwise;

namespace {

template <class Rec, class Reader>
void round_trip(const std::vector<Rec>& rows, Reader read) {
  std::ostringstream first;
  csv::write(first, std::span<const Rec>(rows));
  std::istringstream in(first.str());
  const auto back = read(in);
  CHECK(back == rows);
  std::ostringstream second;
  csv::write(second, std::span<const Rec>(back));
  CHECK(second.str() == first.str());
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(csv::format_real(6.0) == "6");
  CHECK(csv::format_real(0.5) == "0.5");
  CHECK(csv::format_real(4.0 / 3.0) == "1.33333333333");
  CHECK(csv::format_real(2.1e5) == "210000");
  CHECK(csv::format_real(1.0 / 3e9) == "3.33333333333e-10");
  CHECK(csv::round12(4.0 / 3.0) == 1.33333333333);
}

TEST_CASE("128-bit integers") {
  const u128 max = ~u128{0};
  CHECK(csv::format_u128(max) == "340282366920938463463374607431768211455");
  CHECK(csv::parse_u128("340282366920938463463374607431768211455") == max);
  CHECK_THROWS_AS(csv::parse_u128("340282366920938463463374607431768211456"), FormatError);
  CHECK(csv::format_u128(0) == "0");
  CHECK_THROWS_AS(csv::parse_u128("12a"), FormatError);
}

TEST_CASE("reports round-trip through CSV") {
  std::vector<csv::CountRecord> counts;
  for (const auto& c : count_batch(std::vector<GapQuery>{{Builtin::Tau, 1000, 1, GapMode::Plus},
                                                         {Builtin::Phi, 5000, 2, GapMode::Reduced}}))
    counts.push_back(csv::to_record(c));
  round_trip(counts, csv::read_counts);

  std::vector<csv::ProfileRecord> profiles = {
      csv::to_record(profile(Builtin::Sigma, {EnvelopeKind::LogLog}, 16, 5000)),
      csv::to_record(profile(Builtin::OmegaDistinct, {EnvelopeKind::LogOverLogLogPow, 0.7}, 16, 5000))};
  CHECK_FALSE(profiles[0].c_param.has_value());
  CHECK(profiles[1].c_param == 0.7);
  round_trip(profiles, csv::read_profiles);

  round_trip(csv::to_records(bound_report(Builtin::OmegaDistinct, preset_formula(Builtin::OmegaDistinct),
                                          {{100, 10}, {1000, 1}, {1000, 3}})),
             csv::read_bounds);

  std::vector<csv::ExtremalRecord> ext;
  for (auto s : kAllStatistics) ext.push_back(csv::to_record(scan_extremal(s, 16, 3000)));
  round_trip(ext, csv::read_extremals);

  round_trip(std::vector<csv::CorrelationRecord>{csv::to_record(Builtin::Sigma, correlation_ratio(Builtin::Sigma, 999, 4))},
             csv::read_correlations);
  round_trip(csv::to_records(sieve_window(Builtin::Sigma, 90, 30)), csv::read_values);
}

TEST_CASE("random bound records round-trip") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mant(-300, 300);
  std::vector<csv::BoundRecord> rows;
  for (int i = 0; i < 300; ++i) {
    csv::BoundRecord r;
    r.func = "phi";
    r.formula = "loglog";
    if (rng() % 2) r.c_param = csv::round12(std::pow(10.0, mant(rng) / 30));
    r.x = rng() % 1'000'000'000'000ULL + 1;
    r.l = rng() % 1000 + 1;
    if (rng() % 3) r.count = rng() % r.x;
    if (rng() % 3) r.bound = csv::round12(std::pow(10.0, mant(rng) / 10));
    if (rng() % 3) r.ratio = csv::round12(std::pow(10.0, mant(rng) / 10));
    r.status = (rng() % 2) ? "ok" : "domain_error";
    rows.push_back(r);
  }
  round_trip(rows, csv::read_bounds);
}

TEST_CASE("plot data keeps only ok rows") {
  const auto recs = csv::to_records(bound_report(Builtin::Phi, preset_formula(Builtin::Phi), {{100, 10}, {1000, 1}}));
  std::ostringstream out;
  csv::write_plot_data(out, recs);
  CHECK(out.str().rfind("func\tformula\tc_param\tx\tl\tcount\tbound\tratio\tstatus\n", 0) == 0);
  CHECK(out.str().find("phi\tloglog\t1.78107241799\t1000\t1\t10\t") != std::string::npos);
  CHECK(out.str().find("\t100\t10\t") == std::string::npos);
  CHECK(out.str().find('\r') == std::string::npos);
}

TEST_CASE("readers reject malformed input") {
  std::istringstream bad_header("func,mode,x,l\n");
  CHECK_THROWS_AS(csv::read_counts(bad_header), FormatError);
  std::istringstream short_row("func,mode,x,l,count\ntau,plus,10,1\n");
  CHECK_THROWS_AS(csv::read_counts(short_row), FormatError);
  std::istringstream bad_num("func,mode,x,l,count\ntau,plus,ten,1,1\n");
  CHECK_THROWS_AS(csv::read_counts(bad_num), FormatError);
}
