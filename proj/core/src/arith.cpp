#include "gapwise/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>

#include "gapwise/errors.hpp"

namespace gapwise {

std::string_view builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Phi: return "phi";
    case Builtin::Sigma: return "sigma";
    case Builtin::Tau: return "tau";
    case Builtin::OmegaDistinct: return "omega";
    case Builtin::OmegaMult: return "bigomega";
  }
  throw InternalError("unknown builtin");
}

bool is_multiplicative(Builtin b) {
  return b == Builtin::Phi || b == Builtin::Sigma || b == Builtin::Tau;
}

bool is_additive(Builtin b) { return !is_multiplicative(b); }

CustomTable::CustomTable(std::string id, std::vector<u64> values)
    : id_(std::move(id)), values_(std::move(values)) {
  if (values_.empty()) throw FormatError("table '" + id_ + "' has no rows");
}

u64 CustomTable::at(u64 n) const {
  if (n == 0 || n > values_.size())
    throw DomainError("table '" + id_ + "' covers [1, " + std::to_string(values_.size()) +
                      "], queried at " + std::to_string(n));
  return values_[n - 1];
}

FunctionId FunctionId::custom(std::shared_ptr<const CustomTable> table) {
  if (!table) throw InternalError("null custom table");
  FunctionId f;
  f.table_ = std::move(table);
  return f;
}

std::string FunctionId::name() const {
  if (table_) return table_->id();
  return std::string(builtin_name(builtin_));
}

std::string valid_function_names() {
  std::string out;
  for (Builtin b : kAllBuiltins) {
    if (!out.empty()) out += ", ";
    out += builtin_name(b);
  }
  return out;
}

FunctionId parse_builtin(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "phi" || lower == "totient") return Builtin::Phi;
  if (lower == "sigma") return Builtin::Sigma;
  if (lower == "tau" || lower == "d") return Builtin::Tau;
  if (lower == "omega" || lower == "omega_distinct") return Builtin::OmegaDistinct;
  if (lower == "bigomega" || lower == "omega_mult") return Builtin::OmegaMult;
  throw DomainError("unknown function '" + std::string(name) + "'; valid tags: " + valid_function_names());
}

void check_domain(u64 n, const Limits& limits) {
  if (n == 0) throw DomainError("arithmetic functions are defined for n >= 1");
  if (n > limits.domain_cap)
    throw DomainError(std::to_string(n) + " exceeds the domain cap " + std::to_string(limits.domain_cap));
}

namespace {

struct PrimePower {
  u64 p;
  unsigned e;
};

std::vector<PrimePower> trial_factor(u64 n) {
  std::vector<PrimePower> out;
  auto strip = [&](u64 d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  };
  strip(2);
  for (u64 d = 3; d <= n / d; d += 2) strip(d);
  if (n > 1) out.push_back({n, 1});
  return out;
}

u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("64-bit overflow while accumulating a value");
  return r;
}

}  // namespace

u64 eval_naive(const FunctionId& f, u64 n, const Limits& limits) {
  check_domain(n, limits);
  if (!f.is_builtin()) return f.table()->at(n);

  const auto factors = trial_factor(n);
  u64 v = 0;
  switch (f.builtin()) {
    case Builtin::Phi:
      v = n;
      for (auto [p, e] : factors) v = v / p * (p - 1);
      break;
    case Builtin::Sigma:
      v = 1;
      for (auto [p, e] : factors) {
        u64 sum = 1, pk = 1;
        for (unsigned i = 0; i < e; ++i) {
          pk = checked_mul(pk, p);
          sum += pk;
        }
        v = checked_mul(v, sum);
      }
      break;
    case Builtin::Tau:
      v = 1;
      for (auto [p, e] : factors) v *= e + 1;
      break;
    case Builtin::OmegaDistinct:
      v = factors.size();
      break;
    case Builtin::OmegaMult:
      for (auto [p, e] : factors) v += e;
      break;
  }
  return v;
}

PrimeTable::PrimeTable(std::uint32_t limit) : limit_(limit) {
  std::vector<bool> composite(std::size_t{limit} + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes_.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
}

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

template <Builtin K>
inline void apply_prime_power(u64& v, u64 p, unsigned e) {
  if constexpr (K == Builtin::Phi) {
    u64 t = p - 1;
    for (unsigned i = 1; i < e; ++i) t *= p;
    v *= t;
  } else if constexpr (K == Builtin::Sigma) {
    u64 sum = 1, pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      sum += pk;
    }
    v = checked_mul(v, sum);
  } else if constexpr (K == Builtin::Tau) {
    v *= e + 1;
  } else if constexpr (K == Builtin::OmegaDistinct) {
    v += 1;
  } else {
    v += e;
  }
}

// Moves v from the contribution of p^(k-1) to that of p^k, k >= 2.
// sum_prev = 1 + p + ... + p^(k-1).
template <Builtin K>
inline void raise_exponent(u64& v, u64 p, unsigned k, u64 sum_prev) {
  if constexpr (K == Builtin::Phi) {
    v *= p;
  } else if constexpr (K == Builtin::Sigma) {
    v = checked_mul(v / sum_prev, sum_prev * p + 1);
  } else if constexpr (K == Builtin::Tau) {
    v = v / k * (k + 1);
  } else if constexpr (K == Builtin::OmegaMult) {
    v += 1;
  }
}

// For every prime p <= sqrt(last) the multiples of p, p^2, p^3, ... are
// visited in turn, so exponents are discovered without dividing. `part`
// accumulates the sqrt-smooth part of each n; n / part is then 1 or the
// single large prime factor.
template <Builtin K>
void sieve_segment(u64 start, std::span<u64> out, std::span<const std::uint32_t> primes) {
  const std::size_t len = out.size();
  const u64 last = start + len - 1;
  std::vector<u64> part(len, 1);
  constexpr u64 identity = (K == Builtin::OmegaDistinct || K == Builtin::OmegaMult) ? 0 : 1;
  std::fill(out.begin(), out.end(), identity);

  for (const u64 p : primes) {
    if (p > last / p) break;
    for (u64 m = (start + p - 1) / p * p; m <= last; m += p) {
      const std::size_t i = m - start;
      part[i] *= p;
      apply_prime_power<K>(out[i], p, 1);
    }
    u64 pk = p, sum_prev = 1 + p;
    for (unsigned k = 2; pk <= last / p; ++k) {
      pk *= p;
      for (u64 m = (start + pk - 1) / pk * pk; m <= last; m += pk) {
        const std::size_t i = m - start;
        part[i] *= p;
        raise_exponent<K>(out[i], p, k, sum_prev);
      }
      sum_prev = sum_prev * p + 1;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    const u64 n = start + i;
    if (part[i] != n) apply_prime_power<K>(out[i], n / part[i], 1);
  }
}

}  // namespace

Sieve::Sieve(u64 max_n, Limits limits) : max_n_(max_n), limits_(limits) {
  check_domain(max_n, limits_);
  primes_ = std::make_shared<const PrimeTable>(static_cast<std::uint32_t>(isqrt(max_n)));
}

void Sieve::check_range(u64 start, std::size_t len) const {
  if (len == 0) throw DomainError("empty window");
  if (len > limits_.window_capacity)
    throw ConfigError("window of " + std::to_string(len) + " entries exceeds capacity " +
                      std::to_string(limits_.window_capacity));
  check_domain(start, limits_);
  if (len - 1 > limits_.domain_cap - start) check_domain(limits_.domain_cap + 1, limits_);
  if (start + (len - 1) > max_n_)
    throw InternalError("window ends at " + std::to_string(start + len - 1) + " but sieve was prepared up to " +
                        std::to_string(max_n_));
}

void Sieve::fill(const FunctionId& f, u64 start, std::span<u64> out) const {
  check_range(start, out.size());
  if (!f.is_builtin()) {
    const CustomTable& t = *f.table();
    t.at(start + out.size() - 1);
    const auto src = t.values().subspan(start - 1, out.size());
    std::copy(src.begin(), src.end(), out.begin());
    return;
  }
  const auto primes = primes_->primes();
  switch (f.builtin()) {
    case Builtin::Phi: sieve_segment<Builtin::Phi>(start, out, primes); break;
    case Builtin::Sigma: sieve_segment<Builtin::Sigma>(start, out, primes); break;
    case Builtin::Tau: sieve_segment<Builtin::Tau>(start, out, primes); break;
    case Builtin::OmegaDistinct: sieve_segment<Builtin::OmegaDistinct>(start, out, primes); break;
    case Builtin::OmegaMult: sieve_segment<Builtin::OmegaMult>(start, out, primes); break;
  }
}

ValueWindow Sieve::window(const FunctionId& f, u64 start, std::size_t len) const {
  ValueWindow w{f, start, std::vector<u64>(len)};
  fill(f, start, w.values);
  return w;
}

ValueWindow sieve_window(const FunctionId& f, u64 start, std::size_t len, const Limits& limits) {
  if (len == 0) throw DomainError("empty window");
  check_domain(start, limits);
  if (len - 1 > limits.domain_cap - start) check_domain(limits.domain_cap + 1, limits);
  if (len > limits.window_capacity)
    throw ConfigError("window of " + std::to_string(len) + " entries exceeds capacity " +
                      std::to_string(limits.window_capacity));
  return Sieve(start + len - 1, limits).window(f, start, len);
}

FunctionId import_table(std::string table_id, std::span<const std::pair<u64, u64>> rows) {
  std::vector<u64> values;
  values.reserve(rows.size());
  for (const auto& [n, value] : rows) {
    const u64 expected = values.size() + 1;
    if (n < expected) throw FormatError("duplicate or out-of-order n=" + std::to_string(n) + " in table '" + table_id + "'");
    if (n > expected) throw FormatError("gap at n=" + std::to_string(expected) + " in table '" + table_id + "'");
    values.push_back(value);
  }
  return FunctionId::custom(std::make_shared<const CustomTable>(std::move(table_id), std::move(values)));
}

namespace {

u64 parse_field(std::string_view s, std::size_t line, std::string_view what) {
  u64 v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec == std::errc::result_out_of_range)
    throw FormatError("line " + std::to_string(line) + ": " + std::string(what) + " outside 64 bits");
  if (ec != std::errc() || ptr != end || s.empty())
    throw FormatError("line " + std::to_string(line) + ": malformed " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

FunctionId import_table_csv(std::string table_id, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,value") throw FormatError("expected header 'n,value', got '" + line + "'");

  std::vector<std::pair<u64, u64>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw FormatError("line " + std::to_string(lineno) + ": expected two fields");
    std::string_view sv(line);
    rows.emplace_back(parse_field(sv.substr(0, comma), lineno, "n"), parse_field(sv.substr(comma + 1), lineno, "value"));
  }
  return import_table(std::move(table_id), rows);
}

FunctionId import_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open table file '" + path + "'");
  return import_table_csv(std::filesystem::path(path).stem().string(), in);
}

}  // namespace gapwise
