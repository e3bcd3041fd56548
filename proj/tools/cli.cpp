#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gapwise/csv.hpp"
#include "gapwise/extremal.hpp"

namespace gapwise::cli {

RunOptions SweepConfig::run_options() const {
  RunOptions o;
  o.workers = workers;
  o.window_size = window_size;
  o.witness_cap = witnesses;
  o.limits = limits;
  return o;
}

Environment environment_from_process() {
  Environment env;
  for (const char* key : {"GAPWISE_WORKERS", "GAPWISE_WINDOW_SIZE", "GAPWISE_OUT"})
    if (const char* v = std::getenv(key)) env[key] = v;
  return env;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

u64 digits_value(const std::string& s, const std::string& whole) {
  if (!all_digits(s)) throw UsageError("malformed number '" + whole + "'");
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError("number '" + whole + "' is too large");
  return v;
}

u64 checked_pow(u64 base, u64 exp, const std::string& whole) {
  u64 r = 1;
  for (u64 i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) throw UsageError("number '" + whole + "' is too large");
  return r;
}

double parse_positive_real(const std::string& text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !(v > 0.0) || !std::isfinite(v))
    throw UsageError(std::string(what) + " must be a positive real, got '" + text + "'");
  return v;
}

std::vector<FunctionId> parse_functions(const std::string& text) {
  std::vector<FunctionId> out;
  for (const std::string& item : split_list(text)) {
    if (item == "all") {
      for (Builtin b : kAllBuiltins) out.emplace_back(b);
    } else if (item.rfind("table:", 0) == 0) {
      try {
        out.push_back(import_table_file(item.substr(6)));
      } catch (const Error& e) {
        throw UsageError(std::string("cannot load custom table: ") + e.what());
      }
    } else {
      try {
        out.push_back(parse_builtin(item));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (out.empty()) throw UsageError("no functions given; valid tags: " + valid_function_names());
  return out;
}

const std::vector<u64> kDefaultXGrid = {1'000, 10'000, 100'000, 1'000'000, 10'000'000, 100'000'000};
const std::vector<u64> kDefaultLGrid = {1, 2, 3, 5, 10, 100};

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
  std::vector<std::string> flags;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list = {
      {Command::Sieve, "sieve", "Tabulate function values on [n0, x] as n,value CSV",
       {"func", "x", "n0"}},
      {Command::Count, "count", "Coincidence counts over an (x, l) grid",
       {"func", "mode", "x", "l", "x-grid", "l-grid", "witnesses"}},
      {Command::Profile, "profile", "Worst consecutive-value ratio against an envelope",
       {"func", "envelope", "c", "n0", "x"}},
      {Command::Bounds, "bounds", "Compare counts with lower-bound formulas",
       {"func", "formula", "c", "x", "l", "x-grid", "l-grid"}},
      {Command::Correlate, "correlate", "Shifted correlation sum against the sum of squares",
       {"func", "x", "l", "x-grid", "l-grid"}},
      {Command::Check, "check", "Exact inequalities and extremal-order scans up to x", {"x", "n0"}},
      {Command::Sweep, "sweep", "Counts, bounds and correlations over a full grid",
       {"func", "mode", "x", "l", "x-grid", "l-grid", "formula", "c", "witnesses"}},
  };
  return list;
}

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help = {
      {"func", "Comma list of phi, sigma, tau, omega, bigomega, all, or table:FILE.csv"},
      {"mode", "Comma list of plus, minus, full, reduced, div"},
      {"x", "Single bound x (same as a one-point --x-grid)"},
      {"l", "Single gap l (same as a one-point --l-grid)"},
      {"x-grid", "Comma list of bounds x"},
      {"l-grid", "Comma list of gaps l"},
      {"envelope", "Comma list of one, log, loglog, polylog, linear (default: per-function preset)"},
      {"c", "Envelope exponent for polylog, or the formula parameter"},
      {"formula", "preset, loglog, const, polylog, log or linear"},
      {"n0", "Start of the scanned range"},
      {"witnesses", "Record the first k witnesses per query"},
      {"workers", "Worker threads (env GAPWISE_WORKERS)"},
      {"window-size", "Entries per work window (env GAPWISE_WINDOW_SIZE)"},
      {"out", "Output directory (env GAPWISE_OUT)"},
  };
  return help;
}

}  // namespace

u64 parse_count(const std::string& text) {
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    const u64 mant = digits_value(text.substr(0, e), text);
    const u64 exp = digits_value(text.substr(e + 1), text);
    u64 r;
    if (__builtin_mul_overflow(mant, checked_pow(10, exp, text), &r)) throw UsageError("number '" + text + "' is too large");
    return r;
  }
  if (const auto c = text.find('^'); c != std::string::npos)
    return checked_pow(digits_value(text.substr(0, c), text), digits_value(text.substr(c + 1), text), text);
  return digits_value(text, text);
}

std::vector<u64> parse_grid(const std::string& text) {
  std::vector<u64> out;
  for (const std::string& item : split_list(text)) {
    if (item.empty()) throw UsageError("malformed grid '" + text + "'");
    const u64 v = parse_count(item);
    if (v == 0) throw UsageError("grid values must be >= 1 in '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty grid");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<SweepConfig> parse_invocation(const std::vector<std::string>& args, const Environment& env,
                                            std::ostream& out) {
  CLI::App app{"Coincidence counts, growth profiles and bound reports for arithmetic functions", "gapwise"};
  app.require_subcommand(1, 1);
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, CLI::App*> subs;
  for (const CommandInfo& info : commands()) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    subs[info.name] = sub;
    std::vector<std::string> flags = info.flags;
    flags.insert(flags.end(), {"workers", "window-size", "out"});
    for (const std::string& flag : flags) {
      auto* opt = sub->add_option("--" + flag, values[flag], flag_help().at(flag));
      options[std::string(info.name) + "/" + flag] = opt;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return std::nullopt;
    }
    throw UsageError(e.what());
  }

  const CommandInfo* info = nullptr;
  for (const CommandInfo& c : commands())
    if (subs[c.name]->parsed()) info = &c;
  if (info == nullptr) throw UsageError("a subcommand is required");
  const std::string prefix = std::string(info->name) + "/";
  auto given = [&](const std::string& flag) {
    auto it = options.find(prefix + flag);
    return it != options.end() && it->second->count() > 0;
  };
  auto from_env = [&](const std::string& flag, const char* key) -> std::optional<std::string> {
    if (given(flag)) return values[flag];
    if (auto it = env.find(key); it != env.end()) return it->second;
    return std::nullopt;
  };

  SweepConfig cfg;
  cfg.command = info->command;
  const Command cmd = cfg.command;

  cfg.funcs = parse_functions(given("func") ? values["func"] : "all");

  if (given("mode")) {
    for (const std::string& m : split_list(values["mode"])) {
      try {
        cfg.modes.push_back(parse_mode(m));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  } else {
    cfg.modes = {GapMode::Plus};
  }

  if (given("x") && given("x-grid")) throw UsageError("--x and --x-grid are exclusive");
  if (given("l") && given("l-grid")) throw UsageError("--l and --l-grid are exclusive");
  const bool grid_defaults = cmd == Command::Bounds || cmd == Command::Sweep;
  if (given("x"))
    cfg.x_grid = parse_grid(values["x"]);
  else if (given("x-grid"))
    cfg.x_grid = parse_grid(values["x-grid"]);
  else if (grid_defaults)
    cfg.x_grid = kDefaultXGrid;
  else
    throw UsageError(std::string(info->name) + " needs --x" +
                     (cmd == Command::Count || cmd == Command::Correlate ? " or --x-grid" : ""));
  if ((cmd == Command::Sieve || cmd == Command::Profile || cmd == Command::Check) && cfg.x_grid.size() != 1)
    throw UsageError(std::string(info->name) + " takes a single --x");

  if (given("l"))
    cfg.l_grid = parse_grid(values["l"]);
  else if (given("l-grid"))
    cfg.l_grid = parse_grid(values["l-grid"]);
  else
    cfg.l_grid = grid_defaults ? kDefaultLGrid : std::vector<u64>{1};

  double c_param = 1.0;
  if (given("c")) c_param = parse_positive_real(values["c"], "--c");
  if (given("envelope")) {
    for (const std::string& e : split_list(values["envelope"])) {
      try {
        cfg.envelopes.push_back(parse_envelope(e, c_param));
      } catch (const DomainError& err) {
        throw UsageError(err.what());
      }
    }
  }
  if (given("formula") && values["formula"] != "preset") {
    try {
      cfg.formula = parse_formula(values["formula"], c_param);
    } catch (const DomainError& err) {
      throw UsageError(err.what());
    }
  }
  if ((cmd == Command::Bounds || cmd == Command::Sweep) && !cfg.formula)
    for (const FunctionId& f : cfg.funcs)
      if (!f.is_builtin()) throw UsageError("custom table '" + f.name() + "' has no preset formula; pass --formula");

  if (given("n0")) {
    cfg.n0 = parse_count(values["n0"]);
    if (*cfg.n0 == 0) throw UsageError("--n0 must be >= 1");
  }
  if (given("witnesses")) cfg.witnesses = parse_count(values["witnesses"]);

  if (auto w = from_env("workers", "GAPWISE_WORKERS")) {
    const u64 v = parse_count(*w);
    if (v == 0 || v > 1024) throw UsageError("workers must be in [1, 1024]");
    cfg.workers = static_cast<unsigned>(v);
  }
  if (auto w = from_env("window-size", "GAPWISE_WINDOW_SIZE")) {
    const u64 v = parse_count(*w);
    if (v == 0 || v > cfg.limits.window_capacity / 2)
      throw UsageError("window size must be in [1, " + std::to_string(cfg.limits.window_capacity / 2) + "]");
    cfg.window_size = v;
  }
  if (auto o = from_env("out", "GAPWISE_OUT")) {
    if (o->empty()) throw UsageError("empty output directory");
    cfg.output_dir = *o;
  }

  const u64 cap = cfg.limits.domain_cap;
  const u64 x_max = cfg.x_grid.back();
  const u64 reach = (cmd == Command::Sieve || cmd == Command::Check) ? 0
                    : cmd == Command::Profile                        ? 1
                                                                     : cfg.l_grid.back();
  if (x_max > cap || reach > cap - x_max)
    throw UsageError("x + l = " + std::to_string(x_max) + " + " + std::to_string(reach) + " exceeds the domain cap " +
                     std::to_string(cap));
  if (cfg.n0 && *cfg.n0 > x_max) throw UsageError("--n0 exceeds --x");
  return cfg;
}

namespace {

template <class Rows>
void write_file(const std::filesystem::path& path, const Rows& rows, std::ostream& log) {
  std::ostringstream buf;
  csv::write(buf, std::span(rows));
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << buf.str();
  if (!f) throw Error("cannot write " + path.string());
  log << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
}

void write_text(const std::filesystem::path& path, const std::string& text, std::ostream& log) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw Error("cannot write " + path.string());
  log << "wrote " << path.string() << "\n";
}

void prepare_output(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto probe = dir / ".gapwise_probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!(f << "probe")) throw Error("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

std::vector<std::pair<u64, u64>> grid_points(const SweepConfig& cfg) {
  std::vector<std::pair<u64, u64>> pts;
  for (u64 x : cfg.x_grid)
    for (u64 l : cfg.l_grid) pts.emplace_back(x, l);
  return pts;
}

void run_sieve(const SweepConfig& cfg, std::ostream& log) {
  const RunOptions opts = cfg.run_options();
  const u64 lo = cfg.n0.value_or(1), hi = cfg.x_grid.back();
  const Sieve sieve(hi, opts.limits);
  const auto pieces = split_range(lo, hi, opts.window_size);
  for (const FunctionId& f : cfg.funcs) {
    std::vector<csv::ValueRecord> rows;
    rows.reserve(hi - lo + 1);
    for (const auto& w : parallel_map<ValueWindow>(pieces.size(), opts.workers, [&](std::size_t i) {
           return sieve.window(f, pieces[i].lo, pieces[i].hi - pieces[i].lo + 1);
         })) {
      const auto recs = csv::to_records(w);
      rows.insert(rows.end(), recs.begin(), recs.end());
    }
    write_file(cfg.output_dir / ("sieve_" + f.name() + ".csv"), rows, log);
  }
}

void run_count(const SweepConfig& cfg, std::ostream& log) {
  std::vector<GapQuery> queries;
  for (const FunctionId& f : cfg.funcs)
    for (GapMode m : cfg.modes)
      for (u64 x : cfg.x_grid)
        for (u64 l : cfg.l_grid) queries.push_back({f, x, l, m});
  const auto results = count_batch(queries, cfg.run_options());
  std::vector<csv::CountRecord> rows;
  std::vector<csv::WitnessRecord> witnesses;
  for (const auto& r : results) {
    rows.push_back(csv::to_record(r));
    const auto w = csv::witness_records(r);
    witnesses.insert(witnesses.end(), w.begin(), w.end());
  }
  write_file(cfg.output_dir / "count.csv", rows, log);
  if (cfg.witnesses > 0) write_file(cfg.output_dir / "witnesses.csv", witnesses, log);
}

void run_profile(const SweepConfig& cfg, std::ostream& log) {
  std::vector<csv::ProfileRecord> rows;
  for (const FunctionId& f : cfg.funcs) {
    std::vector<Envelope> envs = cfg.envelopes;
    if (envs.empty()) envs.push_back(f.is_builtin() ? preset_envelope(f.builtin()) : Envelope{});
    for (const Envelope& env : envs) {
      const u64 n0 = cfg.n0.value_or(std::max<u64>(env.n_min(), 2));
      rows.push_back(csv::to_record(profile(f, env, n0, cfg.x_grid.back(), cfg.run_options())));
    }
  }
  write_file(cfg.output_dir / "profile.csv", rows, log);
}

void run_bounds(const SweepConfig& cfg, std::ostream& log) {
  std::vector<csv::BoundRecord> rows;
  std::string notes;
  for (const FunctionId& f : cfg.funcs) {
    const BoundFormula formula = cfg.formula ? *cfg.formula : preset_formula(f.builtin());
    const BoundReport report = bound_report(f, formula, grid_points(cfg), cfg.run_options());
    const auto recs = csv::to_records(report);
    rows.insert(rows.end(), recs.begin(), recs.end());
    for (const auto& n : report.notes) notes += f.name() + "," + formula.name() + ": " + n + "\n";
  }
  write_file(cfg.output_dir / "bounds.csv", rows, log);
  std::ostringstream tsv;
  csv::write_plot_data(tsv, rows);
  write_text(cfg.output_dir / "bounds.tsv", tsv.str(), log);
  if (!notes.empty()) write_text(cfg.output_dir / "bounds_notes.txt", notes, log);
}

void run_correlate(const SweepConfig& cfg, std::ostream& log) {
  std::vector<csv::CorrelationRecord> rows;
  const auto pts = grid_points(cfg);
  for (const FunctionId& f : cfg.funcs)
    for (const auto& c : correlate_batch(f, pts, cfg.run_options())) rows.push_back(csv::to_record(f, c));
  write_file(cfg.output_dir / "correlate.csv", rows, log);
}

// One scan per function feeds the count, bounds and correlation files.
void run_full_sweep(const SweepConfig& cfg, std::ostream& log) {
  const auto pts = grid_points(cfg);
  std::vector<csv::CountRecord> counts;
  std::vector<csv::WitnessRecord> witnesses;
  std::vector<csv::BoundRecord> bounds;
  std::vector<csv::CorrelationRecord> correlations;
  std::string notes;
  for (const FunctionId& f : cfg.funcs) {
    std::vector<GapQuery> queries;
    for (GapMode m : cfg.modes)
      for (const auto& [x, l] : pts) queries.push_back({f, x, l, m});
    const std::size_t reported = queries.size();
    if (std::find(cfg.modes.begin(), cfg.modes.end(), GapMode::Plus) == cfg.modes.end())
      for (const auto& [x, l] : pts) queries.push_back({f, x, l, GapMode::Plus});

    const ScanTables tables = scan_tables(f, queries, pts, cfg.run_options());
    for (std::size_t i = 0; i < reported; ++i) {
      counts.push_back(csv::to_record(tables.counts[i]));
      const auto w = csv::witness_records(tables.counts[i]);
      witnesses.insert(witnesses.end(), w.begin(), w.end());
    }
    const BoundFormula formula = cfg.formula ? *cfg.formula : preset_formula(f.builtin());
    const BoundReport report = bound_report(f, formula, pts, tables.counts, cfg.run_options());
    const auto recs = csv::to_records(report);
    bounds.insert(bounds.end(), recs.begin(), recs.end());
    for (const auto& n : report.notes) notes += f.name() + "," + formula.name() + ": " + n + "\n";
    for (const auto& c : tables.correlations) correlations.push_back(csv::to_record(f, c));
  }
  write_file(cfg.output_dir / "count.csv", counts, log);
  if (cfg.witnesses > 0) write_file(cfg.output_dir / "witnesses.csv", witnesses, log);
  write_file(cfg.output_dir / "bounds.csv", bounds, log);
  std::ostringstream tsv;
  csv::write_plot_data(tsv, bounds);
  write_text(cfg.output_dir / "bounds.tsv", tsv.str(), log);
  if (!notes.empty()) write_text(cfg.output_dir / "bounds_notes.txt", notes, log);
  write_file(cfg.output_dir / "correlate.csv", correlations, log);
}

int run_check(const SweepConfig& cfg, std::ostream& log) {
  const u64 x = cfg.x_grid.back();
  const auto violations = check_exact(x, cfg.run_options());
  std::vector<csv::ViolationRecord> vrows;
  for (const auto& v : violations) vrows.push_back(csv::to_record(v));
  write_file(cfg.output_dir / "exact_violations.csv", vrows, log);

  std::vector<csv::ExtremalRecord> rows;
  const u64 n0 = cfg.n0.value_or(16);
  for (ExtremalStatistic s : kAllStatistics) rows.push_back(csv::to_record(scan_extremal(s, n0, x, cfg.run_options())));
  write_file(cfg.output_dir / "check.csv", rows, log);
  if (!violations.empty()) {
    log << "error: " << violations.size() << " exact inequality violations\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_sweep(const SweepConfig& cfg, std::ostream& log) {
  try {
    prepare_output(cfg.output_dir);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    switch (cfg.command) {
      case Command::Sieve: run_sieve(cfg, log); break;
      case Command::Count: run_count(cfg, log); break;
      case Command::Profile: run_profile(cfg, log); break;
      case Command::Bounds: run_bounds(cfg, log); break;
      case Command::Correlate: run_correlate(cfg, log); break;
      case Command::Check: return run_check(cfg, log);
      case Command::Sweep: run_full_sweep(cfg, log); break;
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_main(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err) {
  std::optional<SweepConfig> cfg;
  try {
    cfg = parse_invocation(args, env, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!cfg) return 0;
  return run_sweep(*cfg, err);
}

}  // namespace gapwise::cli
