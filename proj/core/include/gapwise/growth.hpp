#pragma once

#include <string>
#include <string_view>

#include "gapwise/arith.hpp"
#include "gapwise/parallel.hpp"

namespace gapwise {

enum class EnvelopeKind { One, Log, LogLog, LogOverLogLogPow, Linear };

// Comparison function h(n) for consecutive-value ratios f(n+1)/f(n).
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::One;
  double c = 1.0;  // exponent, LogOverLogLogPow only

  // Smallest n where h(n) is positive and finite: 2, 3 or 16.
  u64 n_min() const;
  // Throws DomainError below n_min().
  double operator()(u64 n) const;
  std::string name() const;
  bool has_param() const { return kind == EnvelopeKind::LogOverLogLogPow; }
};

// Accepts one, log, loglog, polylog (alias log_over_loglog_pow), linear.
Envelope parse_envelope(std::string_view name, double c = 1.0);

// Envelope paired with each built-in by the bounds it feeds.
Envelope preset_envelope(Builtin b);

struct GrowthProfile {
  FunctionId func = Builtin::Phi;
  Envelope envelope;
  u64 n0 = 2;
  u64 x = 3;
  double c_emp = 0.0;
  u64 argmax_n = 0;
};

// f(n+1)/f(n) in double precision. DomainError when f(n) == 0.
double ratio(const FunctionId& f, u64 n, const Limits& limits = {});

// Max over n0 <= n <= x of ratio(f, n) / envelope(n); ties go to the
// smallest n. Exhaustive and partition-independent.
GrowthProfile profile(const FunctionId& f, const Envelope& env, u64 n0, u64 x, const RunOptions& opts = {});

}  // namespace gapwise
