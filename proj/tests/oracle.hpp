#pragma once

// Brute-force references used only by tests. Nothing here touches the
// sieve or the scan engine.

#include <cstdint>
#include <numeric>
#include <vector>

#include "gapwise/arith.hpp"

namespace oracle {

using gapwise::u64;
using gapwise::u128;

// Straight from the definitions: gcd counting for phi, divisor enumeration
// for tau and sigma, repeated division for the omegas.
inline u64 phi_by_gcd(u64 n) {
  u64 c = 0;
  for (u64 m = 1; m <= n; ++m)
    if (std::gcd(m, n) == 1) ++c;
  return c;
}

inline u64 tau_by_divisors(u64 n) {
  u64 c = 0;
  for (u64 d = 1; d * d <= n; ++d)
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  return c;
}

inline u64 sigma_by_divisors(u64 n) {
  u64 s = 0;
  for (u64 d = 1; d * d <= n; ++d)
    if (n % d == 0) s += (d * d == n) ? d : d + n / d;
  return s;
}

inline u64 omega_by_division(u64 n, bool multiplicity) {
  u64 c = 0;
  for (u64 p = 2; p <= n; ++p) {
    if (n % p) continue;
    ++c;
    n /= p;
    while (n % p == 0) {
      n /= p;
      if (multiplicity) ++c;
    }
  }
  return c;
}

// Product over distinct prime divisors, found by trial division. Cheap
// enough for the 1e5 acceptance range where phi_by_gcd is not.
inline u64 phi_by_factors(u64 n) {
  u64 r = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

inline u64 by_definition(gapwise::Builtin b, u64 n) {
  switch (b) {
    case gapwise::Builtin::Phi: return phi_by_gcd(n);
    case gapwise::Builtin::Sigma: return sigma_by_divisors(n);
    case gapwise::Builtin::Tau: return tau_by_divisors(n);
    case gapwise::Builtin::OmegaDistinct: return omega_by_division(n, false);
    case gapwise::Builtin::OmegaMult: return omega_by_division(n, true);
  }
  return 0;
}

// Table f(1..hi) from eval_naive (trial division).
inline std::vector<u64> naive_table(const gapwise::FunctionId& f, u64 hi) {
  std::vector<u64> t(hi + 1, 0);
  for (u64 n = 1; n <= hi; ++n) t[n] = gapwise::eval_naive(f, n);
  return t;
}

// Double-loop coincidence counts over a precomputed table t[1..].
struct NaiveCounts {
  u64 plus = 0, minus = 0, full = 0, reduced = 0, div = 0;
  std::vector<u64> w_plus, w_minus, w_full, w_reduced, w_div;
};

inline NaiveCounts naive_counts(const std::vector<u64>& t, u64 x, u64 l) {
  NaiveCounts c;
  for (u64 n = 1; n <= x; ++n) {
    if (t[n] == t[n + l]) {
      ++c.plus;
      c.w_plus.push_back(n);
      if (n % l == 0) {
        ++c.div;
        c.w_div.push_back(n);
      }
    }
    if (n > l && t[n - l] == t[n]) {
      ++c.minus;
      c.w_minus.push_back(n);
      if (t[n] == t[n + l]) {
        ++c.full;
        c.w_full.push_back(n);
      }
    }
  }
  for (u64 m = 1; m <= x / l; ++m) {
    if (t[m] == t[m + 1]) {
      ++c.reduced;
      c.w_reduced.push_back(m);
    }
  }
  return c;
}

inline void naive_correlation(const std::vector<u64>& t, u64 x, u64 l, u128& s1, u128& s2) {
  s1 = s2 = 0;
  for (u64 n = 1; n <= x; ++n) {
    s1 += u128{t[n]} * t[n + l];
    s2 += u128{t[n]} * t[n];
  }
}

}  // namespace oracle
