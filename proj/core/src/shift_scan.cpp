#include "shift_scan.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gapwise/errors.hpp"

namespace gapwise::detail {

namespace {

struct View {
  u64 base = 0;
  const u64* data = nullptr;
  u64 operator()(u64 m) const { return data[m - base]; }
};

struct LaneTally {
  std::array<u64, kRawModes> counts{};
  std::array<std::vector<u64>, kRawModes> witnesses;
  u128 s1 = 0;
};

struct PieceTally {
  u64 hi = 0;
  std::vector<LaneTally> lanes;
  u128 s2 = 0;
  u64 overflow_at = 0;
};

void add_checked(u128& acc, u128 v, u64 n, u64& overflow_at) {
  if (__builtin_add_overflow(acc, v, &acc) && overflow_at == 0) overflow_at = n;
}

u64 plus_reach(const Lane& lane) {
  return std::max({lane.x_max[kPlus], lane.x_max[kFull], lane.x_max[kDiv], lane.x_corr});
}

u64 minus_reach(const Lane& lane) { return std::max(lane.x_max[kMinus], lane.x_max[kFull]); }

}  // namespace

std::size_t ShiftScanResult::checkpoint_index(u64 x) const {
  auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), x);
  if (it == checkpoints.end() || *it != x) throw InternalError("x=" + std::to_string(x) + " was not a checkpoint");
  return static_cast<std::size_t>(it - checkpoints.begin());
}

ShiftScanResult run_shift_scan(const FunctionId& f, const std::vector<Lane>& lanes, std::vector<u64> checkpoints,
                               const RunOptions& opts) {
  const Limits& limits = opts.limits;
  if (opts.window_size == 0 || opts.window_size > limits.window_capacity)
    throw ConfigError("window size " + std::to_string(opts.window_size) + " must be in [1, " +
                      std::to_string(limits.window_capacity) + "]");

  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  ShiftScanResult result;
  result.checkpoints = checkpoints;
  result.lanes.resize(lanes.size());
  result.s2.assign(checkpoints.size(), 0);
  for (auto& lr : result.lanes) {
    for (auto& c : lr.counts) c.assign(checkpoints.size(), 0);
    lr.s1.assign(checkpoints.size(), 0);
  }
  if (checkpoints.empty() || lanes.empty()) return result;

  u64 x_end = 0, need_hi = 0, corr_end = 0;
  for (const Lane& lane : lanes) {
    if (lane.l == 0) throw DomainError("the gap l must be >= 1");
    const u64 reach_p = plus_reach(lane);
    const u64 reach_m = minus_reach(lane);
    if (reach_p > 0) {
      if (reach_p > limits.domain_cap || lane.l > limits.domain_cap - reach_p)
        throw DomainError("x + l = " + std::to_string(reach_p) + " + " + std::to_string(lane.l) +
                          " exceeds the domain cap " + std::to_string(limits.domain_cap));
      need_hi = std::max(need_hi, reach_p + lane.l);
    }
    if (reach_m > 0) check_domain(reach_m, limits);
    x_end = std::max({x_end, reach_p, reach_m});
    need_hi = std::max(need_hi, reach_m);
    corr_end = std::max(corr_end, lane.x_corr);
  }
  if (x_end == 0) return result;
  if (checkpoints.back() > x_end) throw InternalError("checkpoint beyond the scanned range");

  const Sieve sieve(need_hi, limits);
  const auto pieces = split_range(1, x_end, opts.window_size, checkpoints);
  const std::size_t cap = opts.witness_cap;

  auto process = [&](std::size_t idx) {
    const Piece pc = pieces[idx];
    const u64 a = pc.lo, b = pc.hi;
    PieceTally tally;
    tally.hi = b;
    tally.lanes.resize(lanes.size());

    // Value ranges needed for shift 0 and for each lane's +l / -l.
    u64 hi0 = std::min(b, corr_end);
    u64 lo_all = a, hi_all = a;
    for (const Lane& lane : lanes) {
      const u64 hp = std::min(b, plus_reach(lane));
      const u64 hm = std::min(b, minus_reach(lane));
      hi0 = std::max({hi0, hp, hm});
      if (hp >= a) hi_all = std::max(hi_all, hp + lane.l);
      const u64 ml = std::max(a, lane.l + 1);
      if (hm >= ml) lo_all = std::min(lo_all, ml - lane.l);
    }
    hi_all = std::max(hi_all, hi0);
    if (hi0 < a) return tally;

    std::vector<std::vector<u64>> buffers;
    View v0;
    std::vector<View> vplus(lanes.size()), vminus(lanes.size());
    auto fetch = [&](u64 lo, u64 hi) {
      buffers.emplace_back(hi - lo + 1);
      sieve.fill(f, lo, buffers.back());
      return View{lo, buffers.back().data()};
    };
    const bool combined = hi_all - lo_all + 1 <= limits.window_capacity;
    if (combined) {
      v0 = fetch(lo_all, hi_all);
      std::fill(vplus.begin(), vplus.end(), v0);
      std::fill(vminus.begin(), vminus.end(), v0);
    } else {
      v0 = fetch(a, hi0);
      for (std::size_t i = 0; i < lanes.size(); ++i) {
        const Lane& lane = lanes[i];
        const u64 hp = std::min(b, plus_reach(lane));
        const u64 hm = std::min(b, minus_reach(lane));
        if (hp >= a) vplus[i] = fetch(a + lane.l, hp + lane.l);
        const u64 ml = std::max(a, lane.l + 1);
        if (hm >= ml) vminus[i] = fetch(ml - lane.l, hm - lane.l);
      }
    }

    for (std::size_t i = 0; i < lanes.size(); ++i) {
      const Lane& lane = lanes[i];
      const u64 l = lane.l;
      LaneTally& t = tally.lanes[i];
      auto hit = [&](int mode, u64 n) {
        ++t.counts[mode];
        if (t.witnesses[mode].size() < cap) t.witnesses[mode].push_back(n);
      };
      const View vp = vplus[i], vm = vminus[i];
      const u64 xp = lane.x_max[kPlus], xf = lane.x_max[kFull], xd = lane.x_max[kDiv], xm = lane.x_max[kMinus];

      const u64 hp = std::min(b, plus_reach(lane));
      for (u64 n = a; n <= hp; ++n) {
        const u64 cur = v0(n), next = vp(n + l);
        if (n <= lane.x_corr) add_checked(t.s1, u128{cur} * next, n, tally.overflow_at);
        if (cur != next) continue;
        if (n <= xp) hit(kPlus, n);
        if (n <= xd && n % l == 0) hit(kDiv, n);
        if (n <= xf && n > l && vm(n - l) == cur) hit(kFull, n);
      }
      const u64 hm = std::min(b, xm);
      for (u64 n = std::max(a, l + 1); n <= hm; ++n)
        if (vm(n - l) == v0(n)) hit(kMinus, n);
    }
    for (u64 n = a, hc = std::min(b, corr_end); n <= hc; ++n) {
      const u64 v = v0(n);
      add_checked(tally.s2, u128{v} * v, n, tally.overflow_at);
    }
    return tally;
  };

  std::vector<LaneTally> running(lanes.size());
  u128 running_s2 = 0;
  std::size_t k = 0;
  auto fold = [&](PieceTally&& pt) {
    if (pt.overflow_at) throw DomainError("128-bit overflow in correlation sums at n=" + std::to_string(pt.overflow_at));
    for (std::size_t i = 0; i < lanes.size(); ++i) {
      LaneTally& r = running[i];
      LaneTally& p = pt.lanes[i];
      for (int m = 0; m < kRawModes; ++m) {
        r.counts[m] += p.counts[m];
        auto& w = r.witnesses[m];
        for (u64 n : p.witnesses[m])
          if (w.size() < cap) w.push_back(n);
      }
      if (__builtin_add_overflow(r.s1, p.s1, &r.s1))
        throw DomainError("128-bit overflow in correlation sums at n=" + std::to_string(pt.hi));
    }
    if (__builtin_add_overflow(running_s2, pt.s2, &running_s2))
      throw DomainError("128-bit overflow in correlation sums at n=" + std::to_string(pt.hi));
    while (k < checkpoints.size() && checkpoints[k] == pt.hi) {
      for (std::size_t i = 0; i < lanes.size(); ++i) {
        for (int m = 0; m < kRawModes; ++m) result.lanes[i].counts[m][k] = running[i].counts[m];
        result.lanes[i].s1[k] = running[i].s1;
      }
      result.s2[k] = running_s2;
      ++k;
    }
  };

  const std::size_t block = std::max<std::size_t>(1, std::size_t{opts.workers} * 8);
  for (std::size_t start = 0; start < pieces.size(); start += block) {
    const std::size_t len = std::min(block, pieces.size() - start);
    auto tallies = parallel_map<PieceTally>(len, opts.workers, [&](std::size_t i) { return process(start + i); });
    for (auto& t : tallies) fold(std::move(t));
  }
  for (std::size_t i = 0; i < lanes.size(); ++i)
    for (int m = 0; m < kRawModes; ++m) result.lanes[i].witnesses[m] = std::move(running[i].witnesses[m]);
  return result;
}

namespace {

// A Reduced query is a Plus query at gap 1 and bound floor(x/l).
struct Resolved {
  u64 x;
  u64 l;
  RawMode raw;
  bool empty;  // index range is empty, count is 0 without scanning
};

Resolved resolve(const GapQuery& q) {
  if (q.x == 0) throw DomainError("x must be >= 1");
  if (q.l == 0) throw DomainError("the gap l must be >= 1");
  switch (q.mode) {
    case GapMode::Plus: return {q.x, q.l, kPlus, false};
    case GapMode::DivRestricted: return {q.x, q.l, kDiv, false};
    case GapMode::Minus: return {q.x, q.l, kMinus, q.l >= q.x};
    case GapMode::Full: return {q.x, q.l, kFull, q.l >= q.x};
    case GapMode::Reduced: {
      const u64 m = q.x / q.l;
      return {m, 1, kPlus, m == 0};
    }
  }
  throw InternalError("unknown mode");
}

}  // namespace

void ScanPlan::add_count(const GapQuery& q) {
  if (!(q.func == func_)) throw InternalError("query for " + q.func.name() + " in a plan for " + func_.name());
  resolve(q);
  counts_.push_back(q);
}

void ScanPlan::add_correlation(u64 x, u64 l) {
  if (x == 0) throw DomainError("x must be >= 1");
  if (l == 0) throw DomainError("the gap l must be >= 1");
  correlations_.emplace_back(x, l);
}

ScanTables ScanPlan::run(const RunOptions& opts) const {
  std::map<u64, Lane> lanes;
  std::vector<u64> checkpoints;
  for (const GapQuery& q : counts_) {
    const Resolved r = resolve(q);
    if (r.empty) continue;
    Lane& lane = lanes[r.l];
    lane.l = r.l;
    lane.x_max[r.raw] = std::max(lane.x_max[r.raw], r.x);
    checkpoints.push_back(r.x);
  }
  for (const auto& [x, l] : correlations_) {
    Lane& lane = lanes[l];
    lane.l = l;
    lane.x_corr = std::max(lane.x_corr, x);
    checkpoints.push_back(x);
  }
  std::vector<Lane> lane_list;
  std::map<u64, std::size_t> lane_index;
  for (auto& [l, lane] : lanes) {
    lane_index[l] = lane_list.size();
    lane_list.push_back(lane);
  }
  const auto scan = run_shift_scan(func_, lane_list, checkpoints, opts);

  ScanTables out;
  out.counts.reserve(counts_.size());
  for (const GapQuery& q : counts_) {
    const Resolved r = resolve(q);
    CoincidenceCount cc{q, 0, {}};
    if (!r.empty) {
      const LaneResult& lr = scan.lanes[lane_index.at(r.l)];
      cc.count = lr.counts[r.raw][scan.checkpoint_index(r.x)];
      for (u64 n : lr.witnesses[r.raw])
        if (n <= r.x) cc.witnesses.push_back(n);
    }
    out.counts.push_back(std::move(cc));
  }
  for (const auto& [x, l] : correlations_) {
    const std::size_t k = scan.checkpoint_index(x);
    Correlation c{x, l, scan.lanes[lane_index.at(l)].s1[k], scan.s2[k], 0.0};
    if (c.s2 == 0) throw DomainError("sum of squares is zero, correlation ratio undefined");
    c.ratio = static_cast<double>(static_cast<long double>(c.s1) / static_cast<long double>(c.s2));
    out.correlations.push_back(c);
  }
  return out;
}

}  // namespace gapwise::detail
