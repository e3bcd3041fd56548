#include <doctest.h>

#include <cmath>

#include "gapwise/errors.hpp"
#include "gapwise/growth.hpp"
#include "oracle.hpp"

using namespace gapwise;

namespace {

// Exhaustive reference scan over a naive table.
std::pair<double, u64> scan_oracle(Builtin b, const Envelope& env, u64 n0, u64 x) {
  const auto t = oracle::naive_table(b, x + 1);
  double best = -1.0;
  u64 arg = 0;
  for (u64 n = n0; n <= x; ++n) {
    const double r = static_cast<double>(t[n + 1]) / static_cast<double>(t[n]) / env(n);
    if (r > best) {
      best = r;
      arg = n;
    }
  }
  return {best, arg};
}

FunctionId table_of(const std::vector<u64>& values, const char* id) {
  std::vector<std::pair<u64, u64>> rows;
  for (std::size_t i = 0; i < values.size(); ++i) rows.emplace_back(i + 1, values[i]);
  return import_table(id, rows);
}

}  // namespace

TEST_CASE("envelope values and guards") {
  CHECK(Envelope{EnvelopeKind::One}(2) == 1.0);
  CHECK(Envelope{EnvelopeKind::Linear}(7) == 7.0);
  CHECK(Envelope{EnvelopeKind::Log}(3) == doctest::Approx(std::log(3.0)));
  CHECK(Envelope{EnvelopeKind::LogLog}(16) == doctest::Approx(std::log(std::log(16.0))));
  CHECK(Envelope{EnvelopeKind::LogOverLogLogPow, 2.0}(100) ==
        doctest::Approx(std::log(100.0) / std::pow(std::log(std::log(100.0)), 2.0)));
  CHECK_THROWS_AS(Envelope{EnvelopeKind::LogLog}(15), DomainError);
  CHECK_THROWS_AS(Envelope{EnvelopeKind::Log}(2), DomainError);
  CHECK_THROWS_AS(Envelope{EnvelopeKind::One}(1), DomainError);
  CHECK(parse_envelope("polylog", 0.5).c == 0.5);
  CHECK_THROWS_AS(parse_envelope("cubic"), DomainError);
  CHECK_THROWS_AS(parse_envelope("polylog", -1.0), DomainError);
}

TEST_CASE("ratio examples") {
  CHECK(ratio(Builtin::Sigma, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(ratio(Builtin::Phi, 1) == 1.0);
  CHECK(ratio(Builtin::Tau, 59) == 6.0);
  CHECK(static_cast<double>(oracle::tau_by_divisors(60)) / oracle::tau_by_divisors(59) == 6.0);
  CHECK_THROWS_AS(ratio(Builtin::OmegaDistinct, 1), DomainError);
  CHECK_THROWS_AS(ratio(Builtin::OmegaMult, 1), DomainError);
}

TEST_CASE("profile pins") {
  const auto one = profile(Builtin::Tau, {EnvelopeKind::One}, 2, 100);
  CHECK(one.c_emp == 6.0);
  CHECK(one.argmax_n == 59);
  const auto ref_one = scan_oracle(Builtin::Tau, {EnvelopeKind::One}, 2, 100);
  CHECK(ref_one.first == 6.0);
  CHECK(ref_one.second == 59);

  const auto lin = profile(Builtin::Tau, {EnvelopeKind::Linear}, 2, 10);
  CHECK(lin.c_emp == 0.5);
  CHECK(lin.argmax_n == 2);
  const auto ref_lin = scan_oracle(Builtin::Tau, {EnvelopeKind::Linear}, 2, 10);
  CHECK(ref_lin.first == 0.5);
  CHECK(ref_lin.second == 2);
}

TEST_CASE("profile matches the exhaustive oracle for every preset envelope") {
  for (Builtin b : kAllBuiltins) {
    const Envelope env = preset_envelope(b);
    const u64 n0 = std::max<u64>(env.n_min(), 2);
    const auto got = profile(b, env, n0, 20'000);
    const auto ref = scan_oracle(b, env, n0, 20'000);
    CHECK(got.c_emp == ref.first);
    CHECK(got.argmax_n == ref.second);
  }
}

TEST_CASE("constant custom function") {
  const FunctionId ones = table_of(std::vector<u64>(500, 1), "ones");
  const auto log_prof = profile(ones, {EnvelopeKind::Log}, 3, 400);
  CHECK(log_prof.c_emp == doctest::Approx(1.0 / std::log(3.0)));
  CHECK(log_prof.argmax_n == 3);
  const auto lin = profile(ones, {EnvelopeKind::Linear}, 10, 400);
  CHECK(lin.c_emp == 0.1);
  CHECK(lin.argmax_n == 10);
  CHECK(profile(ones, {EnvelopeKind::One}, 2, 400).argmax_n == 2);
}

TEST_CASE("scaling a table leaves the profile unchanged") {
  std::vector<u64> base, scaled;
  for (u64 n = 1; n <= 3000; ++n) {
    base.push_back(eval_naive(Builtin::Sigma, n));
    scaled.push_back(7 * base.back());
  }
  const auto a = profile(table_of(base, "s"), {EnvelopeKind::LogLog}, 16, 2999);
  const auto b = profile(table_of(scaled, "s7"), {EnvelopeKind::LogLog}, 16, 2999);
  CHECK(a.c_emp == b.c_emp);
  CHECK(a.argmax_n == b.argmax_n);
}

TEST_CASE("c_emp is nondecreasing in x") {
  double prev = 0.0;
  for (u64 x = 100; x <= 10'000; x += 700) {
    const auto p = profile(Builtin::OmegaMult, {EnvelopeKind::Log}, 3, x);
    CHECK(p.c_emp >= prev);
    prev = p.c_emp;
  }
}

TEST_CASE("parallel reduction equals the sequential scan") {
  const auto ref = profile(Builtin::Tau, {EnvelopeKind::One}, 2, 300'000);
  for (unsigned workers : {1u, 4u})
    for (std::size_t ws : {std::size_t{61}, std::size_t{1000}, std::size_t{1} << 18}) {
      RunOptions o;
      o.workers = workers;
      o.window_size = ws;
      const auto got = profile(Builtin::Tau, {EnvelopeKind::One}, 2, 300'000, o);
      CHECK(got.c_emp == ref.c_emp);
      CHECK(got.argmax_n == ref.argmax_n);
    }
}

TEST_CASE("profile errors") {
  CHECK_THROWS_AS(profile(Builtin::Tau, {EnvelopeKind::One}, 10, 10), DomainError);
  CHECK_THROWS_AS(profile(Builtin::Tau, {EnvelopeKind::LogLog}, 15, 100), DomainError);
  CHECK_THROWS_AS(profile(Builtin::Tau, {EnvelopeKind::Log}, 2, 100), DomainError);
  const FunctionId zeros = table_of({1, 1, 0, 1, 1}, "z");
  CHECK_THROWS_AS(profile(zeros, {EnvelopeKind::One}, 2, 4), DomainError);
}
