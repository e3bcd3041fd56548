#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gapwise/arith.hpp"
#include "gapwise/bounds.hpp"
#include "gapwise/counting.hpp"
#include "gapwise/errors.hpp"
#include "gapwise/growth.hpp"

namespace gapwise::cli {

// Bad invocation: exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { Sieve, Count, Profile, Bounds, Correlate, Check, Sweep };

struct SweepConfig {
  Command command = Command::Sweep;
  std::vector<FunctionId> funcs;
  std::vector<GapMode> modes;
  std::vector<u64> x_grid;  // ascending, unique
  std::vector<u64> l_grid;  // ascending, unique
  std::vector<Envelope> envelopes;     // empty: per-function preset
  std::optional<BoundFormula> formula;  // empty: per-function preset
  std::optional<u64> n0;
  unsigned workers = 1;
  std::size_t window_size = std::size_t{1} << 16;
  std::size_t witnesses = 0;
  std::filesystem::path output_dir = ".";
  Limits limits{};

  RunOptions run_options() const;
};

using Environment = std::map<std::string, std::string>;

// Environment variables read by parse_invocation.
Environment environment_from_process();

// Flags beat GAPWISE_* environment variables, which beat defaults.
// Throws UsageError. Returns nullopt when --help was requested (help text
// already written to `out`).
std::optional<SweepConfig> parse_invocation(const std::vector<std::string>& args, const Environment& env,
                                            std::ostream& out);

// Integer in plain, 1e6 or 10^6 notation.
u64 parse_count(const std::string& text);
std::vector<u64> parse_grid(const std::string& text);

// 0 on success, 1 on any computational or output error.
int run_sweep(const SweepConfig& config, std::ostream& log);

// parse_invocation + run_sweep with the 0/1/2 exit-code contract.
int run_main(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err);

}  // namespace gapwise::cli
