#include <doctest.h>

#include <random>

#include "gapwise/counting.hpp"
#include "gapwise/errors.hpp"
#include "oracle.hpp"

using namespace gapwise;

namespace {

std::vector<u64> w(std::initializer_list<u64> v) { return v; }

}  // namespace

TEST_CASE("count_plus examples") {
  const auto tau = count_plus(Builtin::Tau, 10, 1);
  CHECK(tau.count == 1);
  CHECK(tau.witnesses == w({2}));
  const auto om = count_plus(Builtin::OmegaDistinct, 10, 1);
  CHECK(om.count == 5);
  CHECK(om.witnesses == w({2, 3, 4, 7, 8}));
  CHECK(count_plus(Builtin::Phi, 1, 1).count == 1);

  // Frozen from the double-loop oracle.
  const auto t = oracle::naive_table(Builtin::Tau, 20);
  CHECK(oracle::naive_counts(t, 10, 1).plus == 1);
  const auto o = oracle::naive_table(Builtin::OmegaDistinct, 20);
  CHECK(oracle::naive_counts(o, 10, 1).w_plus == w({2, 3, 4, 7, 8}));
}

TEST_CASE("count_minus examples") {
  const auto phi = count_minus(Builtin::Phi, 10, 2);
  CHECK(phi.count == 3);
  CHECK(phi.witnesses == w({6, 9, 10}));
  CHECK(count_minus(Builtin::Tau, 3, 1).count == 1);
  CHECK(count_minus(Builtin::Tau, 3, 1).witnesses == w({3}));
  for (Builtin b : kAllBuiltins) {
    CHECK(count_minus(b, 5, 5).count == 0);
    CHECK(count_minus(b, 5, 9).count == 0);
  }
  CHECK(oracle::naive_counts(oracle::naive_table(Builtin::Phi, 20), 10, 2).w_minus == w({6, 9, 10}));
}

TEST_CASE("count_full examples") {
  const auto tau = count_full(Builtin::Tau, 35, 1);
  CHECK(tau.count == 1);
  CHECK(tau.witnesses == w({34}));
  CHECK(count_full(Builtin::Tau, 10, 1).count == 0);
  CHECK(count_full(Builtin::Sigma, 7, 7).count == 0);
  CHECK(oracle::naive_counts(oracle::naive_table(Builtin::Tau, 40), 35, 1).w_full == w({34}));
}

TEST_CASE("count_reduced examples") {
  CHECK(count_reduced(Builtin::Tau, 100, 10).count == 1);
  CHECK(count_reduced(Builtin::OmegaDistinct, 100, 10).count == 5);
  CHECK(count_reduced(Builtin::OmegaDistinct, 100, 10).witnesses == w({2, 3, 4, 7, 8}));
  CHECK(count_reduced(Builtin::Tau, 9, 10).count == 0);
  for (Builtin b : kAllBuiltins)
    for (u64 x : {1, 17, 500}) CHECK(count_reduced(b, x, 1).count == count_plus(b, x, 1).count);
}

TEST_CASE("count_div_restricted examples") {
  const auto phi = count_div_restricted(Builtin::Phi, 10, 2);
  CHECK(phi.count == 3);
  CHECK(phi.witnesses == w({4, 8, 10}));
  CHECK(count_div_restricted(Builtin::Tau, 10, 3).count == 0);
  for (Builtin b : kAllBuiltins)
    for (u64 x : {1, 23, 700}) CHECK(count_div_restricted(b, x, 1).count == count_plus(b, x, 1).count);
  CHECK(oracle::naive_counts(oracle::naive_table(Builtin::Phi, 20), 10, 2).w_div == w({4, 8, 10}));
}

TEST_CASE("query errors") {
  CHECK_THROWS_AS(count_plus(Builtin::Tau, 0, 1), DomainError);
  CHECK_THROWS_AS(count_plus(Builtin::Tau, 10, 0), DomainError);
  CHECK_THROWS_AS(count_plus(Builtin::Tau, 1'000'000'000'000ULL, 1), DomainError);
  RunOptions o;
  o.limits.domain_cap = 1000;
  CHECK_THROWS_AS(count_plus(Builtin::Tau, 990, 11, o), DomainError);
  CHECK(count_plus(Builtin::Tau, 990, 10, o).count == count_plus(Builtin::Tau, 990, 10).count);
  CHECK_THROWS_AS(count_full(Builtin::Tau, 995, 6, o), DomainError);
  CHECK_NOTHROW(count_minus(Builtin::Tau, 1000, 6, o));
  CHECK_THROWS_AS(parse_mode("sideways"), DomainError);
  CHECK(parse_mode("div") == GapMode::DivRestricted);
}

TEST_CASE("every mode matches the double-loop oracle") {
  const u64 x = 3000;
  RunOptions opts;
  opts.window_size = 257;
  opts.witness_cap = 1'000'000;
  for (Builtin b : kAllBuiltins) {
    const auto table = oracle::naive_table(b, x + 200);
    for (u64 l : {1, 2, 3, 7, 100, 150}) {
      const auto ref = oracle::naive_counts(table, x, l);
      std::vector<GapQuery> qs;
      for (GapMode m : kAllModes) qs.push_back({b, x, l, m});
      const auto got = count_batch(qs, opts);
      CHECK(got[0].count == ref.plus);
      CHECK(got[0].witnesses == ref.w_plus);
      CHECK(got[1].count == ref.minus);
      CHECK(got[1].witnesses == ref.w_minus);
      CHECK(got[2].count == ref.full);
      CHECK(got[2].witnesses == ref.w_full);
      CHECK(got[3].count == ref.reduced);
      CHECK(got[3].witnesses == ref.w_reduced);
      CHECK(got[4].count == ref.div);
      CHECK(got[4].witnesses == ref.w_div);
    }
  }
}

TEST_CASE("separate windows when the shifted span exceeds capacity") {
  // With a 64-entry capacity a gap of 100 cannot share one window.
  RunOptions opts;
  opts.limits.window_capacity = 64;
  opts.window_size = 32;
  opts.witness_cap = 1000;
  const auto table = oracle::naive_table(Builtin::Tau, 1500);
  for (u64 l : {1, 100, 700}) {
    const auto ref = oracle::naive_counts(table, 700, l);
    CHECK(count_plus(Builtin::Tau, 700, l, opts).witnesses == ref.w_plus);
    CHECK(count_minus(Builtin::Tau, 700, l, opts).witnesses == ref.w_minus);
    CHECK(count_full(Builtin::Tau, 700, l, opts).count == ref.full);
    CHECK(count_div_restricted(Builtin::Tau, 700, l, opts).count == ref.div);
  }
}

TEST_CASE("monotone in x and the subset chain") {
  std::mt19937_64 rng(3);
  for (Builtin b : kAllBuiltins) {
    const u64 l = std::uniform_int_distribution<u64>(1, 12)(rng);
    std::vector<GapQuery> qs;
    for (u64 x = 50; x <= 5000; x += 50)
      for (GapMode m : kAllModes) qs.push_back({b, x, l, m});
    const auto got = count_batch(qs);
    const std::size_t M = std::size(kAllModes);
    for (std::size_t i = 0; i < got.size(); i += M) {
      const u64 plus = got[i].count, minus = got[i + 1].count, full = got[i + 2].count, div = got[i + 4].count;
      CHECK(full <= std::min(plus, minus));
      CHECK(div <= plus);
      CHECK(got[i].count <= got[i].query.x);
      if (i >= M)
        for (std::size_t m = 0; m < M; ++m) CHECK(got[i + m].count >= got[i - M + m].count);
    }
  }
}

TEST_CASE("shift duality between minus and plus") {
  for (Builtin b : kAllBuiltins)
    for (u64 l : {1, 2, 5, 30})
      for (u64 x : {31, 400, 2500}) CHECK(count_minus(b, x, l).count == count_plus(b, x - l, l).count);
}

TEST_CASE("witnesses are capped, ascending and satisfy the relation") {
  RunOptions opts;
  opts.witness_cap = 5;
  const auto c = count_plus(Builtin::Tau, 100'000, 2, opts);
  CHECK(c.witnesses.size() == 5);
  CHECK(std::is_sorted(c.witnesses.begin(), c.witnesses.end()));
  for (u64 n : c.witnesses) CHECK(eval_naive(Builtin::Tau, n) == eval_naive(Builtin::Tau, n + 2));
  opts.witness_cap = 0;
  CHECK(count_plus(Builtin::Tau, 1000, 1, opts).witnesses.empty());
}

TEST_CASE("results do not depend on workers or window size") {
  std::vector<GapQuery> qs;
  for (Builtin b : kAllBuiltins)
    for (GapMode m : kAllModes)
      for (u64 x : {999, 50'000, 200'000})
        for (u64 l : {1, 3, 10}) qs.push_back({b, x, l, m});
  RunOptions base;
  base.window_size = 1 << 16;
  const auto ref = count_batch(qs, base);
  for (unsigned workers : {1u, 3u, 4u}) {
    for (std::size_t ws : {std::size_t{97}, std::size_t{4096}, std::size_t{1} << 20}) {
      RunOptions o;
      o.workers = workers;
      o.window_size = ws;
      const auto got = count_batch(qs, o);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        REQUIRE(got[i].count == ref[i].count);
        REQUIRE(got[i].witnesses == ref[i].witnesses);
      }
    }
  }
}

TEST_CASE("custom tables count like the built-in they copy") {
  std::vector<std::pair<u64, u64>> rows;
  for (u64 n = 1; n <= 100; ++n) rows.emplace_back(n, eval_naive(Builtin::Tau, n));
  const FunctionId copy = import_table("tau_copy", rows);
  for (u64 l : {1, 2, 5, 9})
    for (GapMode m : kAllModes) {
      if (m == GapMode::Reduced && l == 1) continue;
      const u64 x = (m == GapMode::Minus) ? 100 : 100 - l;
      CHECK(count({copy, x, l, m}).count == count({Builtin::Tau, x, l, m}).count);
    }
  const std::vector<std::pair<u64, u64>> ones = {{1, 1}, {2, 1}, {3, 1}};
  CHECK(count_plus(import_table("ones", ones), 2, 1).count == 2);
  CHECK_THROWS_AS(count_plus(copy, 100, 1), DomainError);
}
