#include "gapwise/growth.hpp"

#include <cmath>

#include "gapwise/errors.hpp"

namespace gapwise {

u64 Envelope::n_min() const {
  switch (kind) {
    case EnvelopeKind::One:
    case EnvelopeKind::Linear: return 2;
    case EnvelopeKind::Log: return 3;
    case EnvelopeKind::LogLog:
    case EnvelopeKind::LogOverLogLogPow: return 16;
  }
  throw InternalError("unknown envelope");
}

double Envelope::operator()(u64 n) const {
  if (n < n_min())
    throw DomainError("envelope " + name() + " needs n >= " + std::to_string(n_min()) + ", got " + std::to_string(n));
  const double v = static_cast<double>(n);
  switch (kind) {
    case EnvelopeKind::One: return 1.0;
    case EnvelopeKind::Log: return std::log(v);
    case EnvelopeKind::LogLog: return std::log(std::log(v));
    case EnvelopeKind::LogOverLogLogPow: return std::log(v) / std::pow(std::log(std::log(v)), c);
    case EnvelopeKind::Linear: return v;
  }
  throw InternalError("unknown envelope");
}

std::string Envelope::name() const {
  switch (kind) {
    case EnvelopeKind::One: return "one";
    case EnvelopeKind::Log: return "log";
    case EnvelopeKind::LogLog: return "loglog";
    case EnvelopeKind::LogOverLogLogPow: return "polylog";
    case EnvelopeKind::Linear: return "linear";
  }
  throw InternalError("unknown envelope");
}

Envelope parse_envelope(std::string_view name, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("envelope parameter c must be positive");
  if (name == "one") return {EnvelopeKind::One, c};
  if (name == "log") return {EnvelopeKind::Log, c};
  if (name == "loglog") return {EnvelopeKind::LogLog, c};
  if (name == "polylog" || name == "log_over_loglog_pow") return {EnvelopeKind::LogOverLogLogPow, c};
  if (name == "linear") return {EnvelopeKind::Linear, c};
  throw DomainError("unknown envelope '" + std::string(name) + "'; valid: one, log, loglog, polylog, linear");
}

Envelope preset_envelope(Builtin b) {
  switch (b) {
    case Builtin::Phi:
    case Builtin::Sigma: return {EnvelopeKind::LogLog};
    case Builtin::Tau: return {EnvelopeKind::One};
    case Builtin::OmegaDistinct: return {EnvelopeKind::LogOverLogLogPow, 1.0};
    case Builtin::OmegaMult: return {EnvelopeKind::Log};
  }
  throw InternalError("unknown builtin");
}

double ratio(const FunctionId& f, u64 n, const Limits& limits) {
  check_domain(n, limits);
  const auto w = sieve_window(f, n, 2, limits);
  if (w.values[0] == 0) throw DomainError(f.name() + "(" + std::to_string(n) + ") = 0, ratio undefined");
  return static_cast<double>(w.values[1]) / static_cast<double>(w.values[0]);
}

namespace {

struct Best {
  double value = -1.0;
  u64 n = 0;
};

}  // namespace

GrowthProfile profile(const FunctionId& f, const Envelope& env, u64 n0, u64 x, const RunOptions& opts) {
  if (x <= n0) throw DomainError("empty profile range: need x > n0");
  if (n0 < env.n_min())
    throw DomainError("n0 = " + std::to_string(n0) + " is below the envelope's minimum " + std::to_string(env.n_min()));
  if (f.is_builtin() && is_additive(f.builtin()) && n0 < 2) throw DomainError("additive functions vanish at 1");
  if (opts.window_size == 0 || opts.window_size + 1 > opts.limits.window_capacity)
    throw ConfigError("window size must be in [1, capacity - 1]");
  check_domain(x, opts.limits);
  check_domain(x + 1, opts.limits);

  const Sieve sieve(x + 1, opts.limits);
  const auto pieces = split_range(n0, x, opts.window_size);

  auto scan = [&](std::size_t i) {
    const Piece pc = pieces[i];
    std::vector<u64> v(pc.hi - pc.lo + 2);
    sieve.fill(f, pc.lo, v);
    Best best;
    for (u64 n = pc.lo; n <= pc.hi; ++n) {
      const u64 cur = v[n - pc.lo];
      if (cur == 0) throw DomainError(f.name() + "(" + std::to_string(n) + ") = 0 inside the profile range");
      const double r = static_cast<double>(v[n - pc.lo + 1]) / static_cast<double>(cur) / env(n);
      if (r > best.value) best = {r, n};
    }
    return best;
  };

  Best best;
  const std::size_t block = std::max<std::size_t>(1, std::size_t{opts.workers} * 8);
  for (std::size_t start = 0; start < pieces.size(); start += block) {
    const std::size_t len = std::min(block, pieces.size() - start);
    for (const Best& b : parallel_map<Best>(len, opts.workers, [&](std::size_t i) { return scan(start + i); }))
      if (b.value > best.value) best = b;
  }
  return {f, env, n0, x, best.value, best.n};
}

}  // namespace gapwise
