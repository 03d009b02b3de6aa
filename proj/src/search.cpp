#include "adlab/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace adlab {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Shared evaluation core. `dead` marks positions already proven composite by
// the presieve; they are skipped, not retested. Evaluation aborts once the
// target is unreachable (completed=false), unless target is 0.
struct EvalResult {
  TranslateCount tc;
  bool completed = true;
};

EvalResult evaluate_translate(const OffsetTuple& tuple, const mpz_class& n, u64 dead,
                              std::size_t target, const PrimalityPolicy& policy) {
  EvalResult r;
  const std::size_t size = tuple.size();
  std::size_t untested = size;
  for (std::size_t i = 0; i < size; ++i) {
    if (i < 64 && ((dead >> i) & 1)) {
      --untested;
      continue;
    }
    if (r.tc.count + untested < target) {
      r.completed = false;
      return r;
    }
    mpz_class v = tuple[i] + n;
    PrimalityVerdict verdict = is_probable_prime(v, policy.rounds);
    --untested;
    if (verdict.status == PrimalityStatus::Prime) {
      ++r.tc.count;
      r.tc.prime_indices.push_back(i);
    } else if (verdict.status == PrimalityStatus::ProbablePrime) {
      ++r.tc.count;
      r.tc.prime_indices.push_back(i);
      r.tc.certainty = Certainty::Probable;
    }
  }
  return r;
}

}  // namespace

TranslateCount count_primes_in_translate(const OffsetTuple& tuple, const mpz_class& n,
                                         const PrimalityPolicy& policy) {
  return evaluate_translate(tuple, n, 0, 0, policy).tc;
}

PresievePlan build_presieve(const OffsetTuple& tuple, u64 p_cap, std::size_t target) {
  PresievePlan plan;
  plan.tuple_size = tuple.size();
  plan.target = target;
  if (p_cap < 2 || tuple.size() > 64 || tuple.empty()) {
    plan.mode = PresieveMode::Disabled;
    return plan;
  }
  plan.mode = target >= tuple.size() ? PresieveMode::FullConstellation : PresieveMode::CountPruning;
  for (u64 p : primes_up_to(p_cap)) {
    PresievePlan::PrimeWheel wheel;
    wheel.p = p;
    wheel.kill_mask.assign(p, 0);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      // h_i + n ≡ 0 (mod p) exactly when n ≡ -h_i; flag position i there.
      u64 hr = mpz_fdiv_ui(tuple[i].get_mpz_t(), static_cast<unsigned long>(p));
      u64 cls = (p - hr) % p;
      wheel.kill_mask[cls] |= u64{1} << i;
      // The one shift where h_i + n is p itself must not be pruned: the
      // value is prime there, and no other small prime divides it.
      plan.exceptions.push_back({mpz_class(p) - tuple[i], i});
    }
    plan.wheels.push_back(std::move(wheel));
  }
  return plan;
}

namespace {

struct BlockResult {
  std::vector<ShiftHit> hits;
  std::optional<ShiftHit> best;
};

struct WheelEntries {
  u64 p;
  std::vector<std::pair<u64, u64>> classes;  // (shift residue, kill mask)
};

BlockResult scan_block(const TranslateQuery& query, const PresievePlan& plan,
                       const std::vector<WheelEntries>& wheels,
                       const std::vector<std::pair<i64, std::size_t>>& exceptions, i64 b0,
                       u64 len) {
  BlockResult out;
  const std::size_t size = query.tuple.size();
  const u64 full = size >= 64 ? ~u64{0} : (u64{1} << size) - 1;

  std::vector<u64> killed;
  if (plan.mode != PresieveMode::Disabled) {
    killed.assign(len, 0);
    for (const WheelEntries& w : wheels) {
      // Residue class of the block's first shift.
      u64 c0 = static_cast<u64>(((b0 % static_cast<i64>(w.p)) + static_cast<i64>(w.p)) %
                                static_cast<i64>(w.p));
      for (auto [cls, mask] : w.classes) {
        u64 j = (cls + w.p - c0) % w.p;
        for (; j < len; j += w.p) killed[j] |= mask;
      }
    }
    // Repair the shifts where an element equals its own small prime.
    auto it = std::lower_bound(exceptions.begin(), exceptions.end(), b0,
                               [](const auto& e, i64 v) { return e.first < v; });
    for (; it != exceptions.end() && static_cast<u128>(it->first - b0) < len; ++it) {
      killed[static_cast<u64>(it->first - b0)] &= ~(u64{1} << it->second);
    }
  }

  mpz_class n;
  for (u64 j = 0; j < len; ++j) {
    u64 dead = killed.empty() ? 0 : (killed[j] & full);
    std::size_t possible = size - static_cast<std::size_t>(std::popcount(dead));
    if (possible < query.target) continue;
    i64 shift = b0 + static_cast<i64>(j);
    n = static_cast<long>(shift);
    EvalResult ev = evaluate_translate(query.tuple, n, dead, query.target, query.policy);
    if (!ev.completed) continue;
    if (ev.tc.count >= query.target) {
      out.hits.push_back({shift, ev.tc.count, ev.tc.prime_indices, ev.tc.certainty});
    }
    if (!out.best || ev.tc.count > out.best->count) {
      out.best = ShiftHit{shift, ev.tc.count, ev.tc.prime_indices, ev.tc.certainty};
    }
  }
  return out;
}

}  // namespace

SearchResult shift_search(const TranslateQuery& query, const SearchOptions& opts) {
  if (query.tuple.empty()) throw std::invalid_argument("shift_search: empty tuple");
  if (query.target < 1 || query.target > query.tuple.size()) {
    throw std::invalid_argument("shift_search: target must be in [1, tuple size]");
  }
  if (query.shift_hi < query.shift_lo) {
    throw std::invalid_argument("shift_search: shift_hi < shift_lo");
  }
  const u64 block_size = std::max<u64>(1, opts.block_size);
  const u128 total = static_cast<u128>(query.shift_hi) - query.shift_lo + 1;

  PresievePlan plan = build_presieve(query.tuple, opts.presieve_cap, query.target);

  // Flatten the wheels to their populated classes once per search.
  std::vector<WheelEntries> wheels;
  for (const auto& w : plan.wheels) {
    WheelEntries e;
    e.p = w.p;
    for (u64 cls = 0; cls < w.p; ++cls) {
      if (w.kill_mask[cls]) e.classes.emplace_back(cls, w.kill_mask[cls]);
    }
    wheels.push_back(std::move(e));
  }
  // Keep only exceptions inside the scan range, ordered by shift.
  std::vector<std::pair<i64, std::size_t>> exceptions;
  for (const auto& ex : plan.exceptions) {
    if (ex.shift >= query.shift_lo && ex.shift <= query.shift_hi) {
      exceptions.emplace_back(static_cast<i64>(ex.shift.get_si()), ex.element);
    }
  }
  std::sort(exceptions.begin(), exceptions.end());

  const auto t_start = std::chrono::steady_clock::now();

  std::mutex mu;
  u128 next_offset = 0;  // offset of the next shift to grant
  std::vector<BlockResult> slots;
  u64 scanned = 0;
  u64 hits_so_far = 0;
  u64 last_progress = 0;
  bool stopped = false;  // a budget refused further grants

  // Grants blocks in ascending order; shift budgets trim the final grant so
  // a partial result is always a contiguous prefix of the full scan.
  auto grant = [&](u128& offset_out, u64& len_out, std::size_t& slot_out) -> bool {
    std::lock_guard<std::mutex> lock(mu);
    if (stopped || next_offset >= total) return false;
    u64 len = static_cast<u64>(std::min<u128>(block_size, total - next_offset));
    if (opts.budget.max_shifts) {
      u64 budget = *opts.budget.max_shifts;
      u64 used = static_cast<u64>(next_offset > budget ? budget : static_cast<u64>(next_offset));
      u64 remaining = budget > used ? budget - used : 0;
      if (remaining == 0) {
        stopped = true;
        return false;
      }
      len = std::min(len, remaining);
    }
    if (opts.budget.max_seconds) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
      if (elapsed >= *opts.budget.max_seconds) {
        stopped = true;
        return false;
      }
    }
    offset_out = next_offset;
    len_out = len;
    slot_out = slots.size();
    slots.emplace_back();
    next_offset += len;
    return true;
  };

  auto record = [&](std::size_t slot, BlockResult res, u64 len) {
    std::lock_guard<std::mutex> lock(mu);
    hits_so_far += res.hits.size();
    slots[slot] = std::move(res);
    scanned += len;
    if (opts.progress_interval > 0 && opts.progress &&
        scanned - last_progress >= opts.progress_interval) {
      last_progress = scanned;
      opts.progress(scanned, hits_so_far);
    }
  };

  auto worker = [&]() {
    u128 offset;
    u64 len;
    std::size_t slot;
    while (grant(offset, len, slot)) {
      i64 b0 = static_cast<i64>(static_cast<u128>(query.shift_lo) + offset);
      BlockResult res = scan_block(query, plan, wheels, exceptions, b0, len);
      record(slot, std::move(res), len);
    }
  };

  unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchResult result;
  result.shifts_scanned = scanned;
  result.complete = next_offset >= total && !stopped;
  for (BlockResult& b : slots) {
    for (ShiftHit& h : b.hits) result.hits.push_back(std::move(h));
    if (b.best && (!result.best || b.best->count > result.best->count)) {
      result.best = std::move(b.best);
    }
  }
  return result;
}

HarnessReport refutation_harness(const OffsetTuple& a, u64 b, i64 shift_lo, i64 shift_hi, double c,
                                 const SearchOptions& opts, const PrimalityPolicy& policy) {
  if (a.empty()) throw std::invalid_argument("refutation_harness: empty input set");
  if (b < 1) throw std::invalid_argument("refutation_harness: B must be >= 1");

  HarnessReport rep;
  rep.input_size = a.size();
  rep.b = b;

  auto [subset, trace] = extract_admissible_subset(a);
  rep.admissible_subset = subset;
  rep.trace = std::move(trace);

  if (a.size() >= 25) {
    rep.size_bound_applicable = true;
    rep.size_bound_rhs =
        static_cast<double>(a.size()) / (2.0 * std::log(static_cast<double>(a.size())));
    rep.size_bound_ok = static_cast<double>(subset.size()) > rep.size_bound_rhs;
  }

  if (b >= 3) {
    try {
      rep.sizing = required_r(b, c);
    } catch (const ChainViolation&) {
      rep.sizing = std::nullopt;
    }
  }

  rep.target = static_cast<std::size_t>(b) + 1;
  rep.capacity_ok = subset.size() >= rep.target;

  TranslateQuery query;
  query.tuple = subset;
  query.shift_lo = shift_lo;
  query.shift_hi = shift_hi;
  query.target = std::min(rep.target, subset.size());
  query.policy = policy;
  rep.search = shift_search(query, opts);

  for (const ShiftHit& h : rep.search.hits) {
    if (h.count >= rep.target) {
      rep.success = true;
      break;
    }
  }
  return rep;
}

}  // namespace adlab
