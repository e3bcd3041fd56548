#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gapwise {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// The five built-in arithmetic functions.
//   Phi           Euler totient, multiplicative
//   Sigma         sum of divisors, multiplicative
//   Tau           number of divisors, multiplicative
//   OmegaDistinct number of distinct prime factors, additive
//   OmegaMult     number of prime factors with multiplicity, completely additive
enum class Builtin { Phi, Sigma, Tau, OmegaDistinct, OmegaMult };

inline constexpr Builtin kAllBuiltins[] = {Builtin::Phi, Builtin::Sigma, Builtin::Tau,
                                           Builtin::OmegaDistinct, Builtin::OmegaMult};

std::string_view builtin_name(Builtin b);
bool is_multiplicative(Builtin b);
bool is_additive(Builtin b);

// A user-supplied function given by its values on [1, size()].
class CustomTable {
 public:
  CustomTable(std::string id, std::vector<u64> values);

  const std::string& id() const { return id_; }
  u64 size() const { return values_.size(); }
  // Throws DomainError outside [1, size()].
  u64 at(u64 n) const;
  std::span<const u64> values() const { return values_; }

 private:
  std::string id_;
  std::vector<u64> values_;
};

// Names either a built-in function or an imported table. Cheap to copy;
// custom tables are shared immutably.
class FunctionId {
 public:
  FunctionId(Builtin b) : builtin_(b) {}  // NOLINT: implicit by intent
  static FunctionId custom(std::shared_ptr<const CustomTable> table);

  bool is_builtin() const { return table_ == nullptr; }
  Builtin builtin() const { return builtin_; }
  const CustomTable* table() const { return table_.get(); }

  // Lowercase tag for built-ins (phi, sigma, tau, omega, bigomega) or the table id.
  std::string name() const;

  friend bool operator==(const FunctionId& a, const FunctionId& b) {
    return a.table_ == b.table_ && (a.table_ != nullptr || a.builtin_ == b.builtin_);
  }

 private:
  FunctionId() = default;
  Builtin builtin_ = Builtin::Phi;
  std::shared_ptr<const CustomTable> table_;
};

// Accepts the built-in tags (case-insensitive, a few aliases). Throws
// DomainError naming the valid tags otherwise.
FunctionId parse_builtin(std::string_view name);
std::string valid_function_names();

struct Limits {
  // sigma(n) < 2^63 everywhere below this cap.
  u64 domain_cap = 1'000'000'000'000ULL;
  std::size_t window_capacity = std::size_t{1} << 22;
};

// Checks 1 <= n and n <= cap; throws DomainError otherwise.
void check_domain(u64 n, const Limits& limits);

// f(n) by trial-division factorisation. Shares no code with the sieve.
u64 eval_naive(const FunctionId& f, u64 n, const Limits& limits = {});

struct ValueWindow {
  FunctionId func = Builtin::Phi;
  u64 start = 1;
  std::vector<u64> values;

  u64 last() const { return start + values.size() - 1; }
  u64 operator()(u64 n) const { return values[n - start]; }
};

// Primes up to a bound, by a plain sieve of Eratosthenes.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint32_t limit);
  std::uint32_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> primes_;
};

// Segmented sieve able to tabulate any function on windows inside [1, max_n].
// Immutable after construction, so one instance can serve many threads.
class Sieve {
 public:
  explicit Sieve(u64 max_n, Limits limits = {});

  u64 max_n() const { return max_n_; }
  const Limits& limits() const { return limits_; }

  ValueWindow window(const FunctionId& f, u64 start, std::size_t len) const;
  // Writes f(start..start+out.size()-1) into out.
  void fill(const FunctionId& f, u64 start, std::span<u64> out) const;

 private:
  void check_range(u64 start, std::size_t len) const;

  u64 max_n_;
  Limits limits_;
  std::shared_ptr<const PrimeTable> primes_;
};

ValueWindow sieve_window(const FunctionId& f, u64 start, std::size_t len, const Limits& limits = {});

// Registers a custom function from (n, value) rows covering 1..N contiguously.
FunctionId import_table(std::string table_id, std::span<const std::pair<u64, u64>> rows);
// Same, from CSV text with header `n,value`.
FunctionId import_table_csv(std::string table_id, std::istream& in);
FunctionId import_table_file(const std::string& path);

}  // namespace gapwise
