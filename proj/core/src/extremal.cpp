#include "gapwise/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "gapwise/bounds.hpp"
#include "gapwise/errors.hpp"

namespace gapwise {

std::string_view exact_check_name(ExactCheck c) {
  switch (c) {
    case ExactCheck::PhiBelowN: return "phi(n)<n";
    case ExactCheck::SigmaAtLeastN: return "sigma(n)>=n";
    case ExactCheck::TauAtLeastTwo: return "tau(n)>=2";
    case ExactCheck::OmegaAtLeastOne: return "omega(n)>=1";
    case ExactCheck::BigOmegaAtLeastOne: return "Omega(n)>=1";
    case ExactCheck::BigOmegaLog2Bound: return "2^Omega(n)<=n";
    case ExactCheck::OmegaBelowBigOmega: return "omega(n)<=Omega(n)";
    case ExactCheck::TauLowerBridge: return "2^omega(n)<=tau(n)";
    case ExactCheck::TauUpperBridge: return "tau(n)<=2^Omega(n)";
  }
  throw InternalError("unknown check");
}

namespace {

// 2^e <= bound without overflow.
bool pow2_le(u64 e, u64 bound) { return e < 64 && (u64{1} << e) <= bound; }

}  // namespace

std::vector<ExactViolation> check_exact(u64 x, const RunOptions& opts) {
  if (x < 2) throw DomainError("check_exact needs x >= 2");
  check_domain(x, opts.limits);
  const Sieve sieve(x, opts.limits);
  const auto pieces = split_range(2, x, opts.window_size);

  auto scan = [&](std::size_t i) {
    const Piece pc = pieces[i];
    const std::size_t len = pc.hi - pc.lo + 1;
    std::vector<u64> phi(len), sigma(len), tau(len), omega(len), big(len);
    sieve.fill(Builtin::Phi, pc.lo, phi);
    sieve.fill(Builtin::Sigma, pc.lo, sigma);
    sieve.fill(Builtin::Tau, pc.lo, tau);
    sieve.fill(Builtin::OmegaDistinct, pc.lo, omega);
    sieve.fill(Builtin::OmegaMult, pc.lo, big);
    std::vector<ExactViolation> bad;
    for (std::size_t k = 0; k < len; ++k) {
      const u64 n = pc.lo + k;
      auto expect = [&](bool ok, ExactCheck c) {
        if (!ok) bad.push_back({n, c});
      };
      expect(phi[k] < n, ExactCheck::PhiBelowN);
      expect(sigma[k] >= n, ExactCheck::SigmaAtLeastN);
      expect(tau[k] >= 2, ExactCheck::TauAtLeastTwo);
      expect(omega[k] >= 1, ExactCheck::OmegaAtLeastOne);
      expect(big[k] >= 1, ExactCheck::BigOmegaAtLeastOne);
      expect(pow2_le(big[k], n), ExactCheck::BigOmegaLog2Bound);
      expect(omega[k] <= big[k], ExactCheck::OmegaBelowBigOmega);
      expect(pow2_le(omega[k], tau[k]), ExactCheck::TauLowerBridge);
      expect(big[k] >= 64 || tau[k] <= (u64{1} << big[k]), ExactCheck::TauUpperBridge);
    }
    return bad;
  };

  std::vector<ExactViolation> out;
  const std::size_t block = std::max<std::size_t>(1, std::size_t{opts.workers} * 8);
  for (std::size_t start = 0; start < pieces.size(); start += block) {
    const std::size_t len = std::min(block, pieces.size() - start);
    for (auto& v : parallel_map<std::vector<ExactViolation>>(len, opts.workers,
                                                             [&](std::size_t i) { return scan(start + i); }))
      out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::string_view statistic_name(ExtremalStatistic s) {
  switch (s) {
    case ExtremalStatistic::MinPhiRatio: return "min_phi_ratio";
    case ExtremalStatistic::MaxSigmaRatio: return "max_sigma_ratio";
    case ExtremalStatistic::MaxTauExponent: return "max_tau_exponent";
    case ExtremalStatistic::MaxOmegaRatio: return "max_omega_ratio";
  }
  throw InternalError("unknown statistic");
}

ExtremalStatistic parse_statistic(std::string_view name) {
  for (auto s : kAllStatistics)
    if (statistic_name(s) == name) return s;
  throw DomainError("unknown statistic '" + std::string(name) + "'");
}

namespace {

struct StatSpec {
  Builtin func;
  bool minimize;
};

StatSpec spec_of(ExtremalStatistic s) {
  switch (s) {
    case ExtremalStatistic::MinPhiRatio: return {Builtin::Phi, true};
    case ExtremalStatistic::MaxSigmaRatio: return {Builtin::Sigma, false};
    case ExtremalStatistic::MaxTauExponent: return {Builtin::Tau, false};
    case ExtremalStatistic::MaxOmegaRatio: return {Builtin::OmegaDistinct, false};
  }
  throw InternalError("unknown statistic");
}

double statistic_value(ExtremalStatistic s, u64 n, u64 v) {
  const double dn = static_cast<double>(n);
  const double ll = std::log(std::log(dn));
  switch (s) {
    case ExtremalStatistic::MinPhiRatio: return static_cast<double>(v) * ll / dn;
    case ExtremalStatistic::MaxSigmaRatio: return static_cast<double>(v) / (dn * ll);
    case ExtremalStatistic::MaxTauExponent: return std::log(static_cast<double>(v)) * ll / std::log(dn);
    case ExtremalStatistic::MaxOmegaRatio: return static_cast<double>(v) * ll / std::log(dn);
  }
  throw InternalError("unknown statistic");
}

bool is_violation(ExtremalStatistic s, double value) {
  switch (s) {
    case ExtremalStatistic::MinPhiRatio: return value < std::exp(-kEulerGamma);
    case ExtremalStatistic::MaxSigmaRatio: return value >= std::exp(kEulerGamma);
    case ExtremalStatistic::MaxTauExponent: return value > std::numbers::ln2;
    case ExtremalStatistic::MaxOmegaRatio: return false;
  }
  return false;
}

struct PartialScan {
  double extreme;
  u64 arg_n = 0;
  std::vector<u64> violations;
};

}  // namespace

ExtremalScan scan_extremal(ExtremalStatistic stat, u64 n0, u64 x, const RunOptions& opts) {
  if (n0 < 16) throw DomainError("extremal scans start at n0 >= 16");
  if (x <= n0) throw DomainError("empty scan range: need x > n0");
  check_domain(x, opts.limits);
  const StatSpec spec = spec_of(stat);
  const Sieve sieve(x, opts.limits);
  const auto pieces = split_range(n0, x, opts.window_size);
  auto better = [&](double a, double b) { return spec.minimize ? a < b : a > b; };
  const double worst = spec.minimize ? HUGE_VAL : -HUGE_VAL;

  auto scan = [&](std::size_t i) {
    const Piece pc = pieces[i];
    std::vector<u64> v(pc.hi - pc.lo + 1);
    sieve.fill(spec.func, pc.lo, v);
    PartialScan part{worst, 0, {}};
    for (u64 n = pc.lo; n <= pc.hi; ++n) {
      const double s = statistic_value(stat, n, v[n - pc.lo]);
      if (better(s, part.extreme)) {
        part.extreme = s;
        part.arg_n = n;
      }
      if (is_violation(stat, s)) part.violations.push_back(n);
    }
    return part;
  };

  ExtremalScan out{stat, n0, x, worst, 0, {}};
  const std::size_t block = std::max<std::size_t>(1, std::size_t{opts.workers} * 8);
  for (std::size_t start = 0; start < pieces.size(); start += block) {
    const std::size_t len = std::min(block, pieces.size() - start);
    for (auto& p : parallel_map<PartialScan>(len, opts.workers, [&](std::size_t i) { return scan(start + i); })) {
      if (better(p.extreme, out.extreme)) {
        out.extreme = p.extreme;
        out.arg_n = p.arg_n;
      }
      out.violations.insert(out.violations.end(), p.violations.begin(), p.violations.end());
    }
  }
  return out;
}

}  // namespace gapwise
