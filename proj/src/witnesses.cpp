#include "microset/witnesses.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace microset::witnesses {

namespace {

// largest placed budget index, or -1
std::int64_t max_index(const std::vector<PlacedBudget>& placed) {
  std::int64_t m = -1;
  for (const auto& p : placed) m = std::max<std::int64_t>(m, static_cast<std::int64_t>(p.index));
  return m;
}

Numeral nano_bound(std::size_t k) {
  // (1/4)^{2^k} = 2^-(2^{k+1})
  return Numeral::from_power(2, BigInt(1) << static_cast<std::size_t>(k + 1));
}

bool disjoint_from(const Interval& iv, const std::vector<PlacedBudget>& placed,
                   std::int64_t below_index, std::vector<std::size_t>* which = nullptr) {
  bool ok = true;
  for (const auto& p : placed) {
    if (static_cast<std::int64_t>(p.index) >= below_index) continue;
    if (which) which->push_back(p.index);
    if (intersects(iv, p.interval)) ok = false;
  }
  return ok;
}

}  // namespace

NanoChain nano_witness_chain(const nano::Scheme& sch,
                             const std::vector<PlacedBudget>& placed, int depth) {
  for (const auto& p : placed) {
    if (p.index > 63) throw std::invalid_argument("nano witness: budget index too large");
    if (compare(p.interval.length(), nano_bound(p.index)) >= 0)
      throw std::invalid_argument("nano witness: budget length must be strictly below (1/4)^{2^k}");
  }
  const std::int64_t kmax = max_index(placed);

  NanoChain chain;
  chain.budget_count = placed.size();

  // root level: threats are budgets below f(root) = 1, i.e. J_0
  BigInt cur_index = -1;
  Interval cur;
  {
    int survivors = 0;
    int pick = -1;
    for (int r = 0; r < 2; ++r) {
      Interval iv = sch.root_interval(r);
      if (disjoint_from(iv, placed, 1)) {
        ++survivors;
        if (pick < 0) pick = r;
      }
    }
    if (survivors < 1)
      throw std::logic_error("nano witness: no root survivor; |J_0| < 1/4 forbids this");
    cur_index = pick;
    cur = sch.root_interval(pick);
    NanoChainStep step;
    step.index = cur_index;
    step.interval = cur;
    step.bound = nano::f_of(cur_index);
    disjoint_from(cur, placed, 1, &step.threats_checked);
    step.survivor_count_floor = survivors;
    chain.steps.push_back(std::move(step));
  }

  bool interval_live = true;
  for (int d = 0; d < depth; ++d) {
    BigInt f_parent = nano::f_of(cur_index);
    // threats exist only while f(parent) <= kmax <= 63, which confines the
    // node index below 128; everything else is free descent
    bool threats_live = interval_live && f_parent <= kmax;
    NanoChainStep step;
    if (!threats_live) {
      // free descent: every budget is already excluded at the parent
      BigInt child;
      bool child_materializable = cur_index < (1 << 20);
      if (child_materializable) {
        child = (BigInt(1) << static_cast<std::size_t>(cur_index.convert_to<std::int64_t>() + 1));
        step.index = child;
      } else {
        step.index = -1;  // symbolic: child 0 of the previous node
      }
      if (interval_live && child_materializable &&
          nano::weight_of(child) <= (1 << 22)) {
        Interval ci = sch.child_interval(cur, cur_index, child);
        step.interval = ci;
        cur = ci;
      } else {
        interval_live = false;
      }
      step.bound = child_materializable ? nano::f_of(child) : BigInt(kmax) + 1;
      step.survivor_count_floor = -1;  // nothing threatened
      chain.steps.push_back(step);
      if (child_materializable) cur_index = child;
      continue;
    }

    // threats live: locate hit children exactly, then take the smallest
    // surviving child index
    std::int64_t j = cur_index.convert_to<std::int64_t>();
    BigInt f_child = BigInt(1) << static_cast<std::size_t>(j + 1);  // f of any child
    BigInt child_count = BigInt(1) << static_cast<std::size_t>(j + 1);
    Numeral stride = sch.stride_of(cur_index, cur.length());
    auto child_iv = [&](const BigInt& t) {
      Numeral lo = add(cur.lo, stride.scaled(t));
      BigInt k = (BigInt(1) << static_cast<std::size_t>(j + 1)) + t;
      return Interval(lo, add(lo, nano::length_of(k)));
    };
    std::set<BigInt> hits;
    std::vector<std::size_t> checked;
    for (const auto& p : placed) {
      std::int64_t pk = static_cast<std::int64_t>(p.index);
      if (BigInt(pk) < f_parent || BigInt(pk) >= f_child) continue;
      checked.push_back(p.index);
      // binary search the last child starting at or before the budget's end
      BigInt lo = 0, hi = child_count - 1;
      if (compare(child_iv(0).lo, p.interval.hi) > 0) {
        hi = 0;
      } else {
        while (lo < hi) {
          BigInt mid = (lo + hi + 1) >> 1;
          if (compare(add(cur.lo, stride.scaled(mid)), p.interval.hi) <= 0)
            lo = mid;
          else
            hi = mid - 1;
        }
      }
      int budget_hits = 0;
      for (BigInt t = lo > 0 ? lo - 1 : BigInt(0); t <= lo + 1 && t < child_count; ++t) {
        if (intersects(child_iv(t), p.interval)) {
          hits.insert(t);
          ++budget_hits;
        }
      }
      if (budget_hits > 1)
        throw std::logic_error(
            "nano witness: a budget meets two children; the gap certificate forbids this");
    }
    // paper's survivor count: at least f(j) children stay untouched
    BigInt threatened = BigInt(static_cast<std::int64_t>(hits.size()));
    BigInt guaranteed = child_count - (f_child - f_parent);
    if (child_count - threatened < guaranteed)
      throw std::logic_error("nano witness: survivor floor violated");
    BigInt t = 0;
    while (hits.count(t)) ++t;
    BigInt child = (BigInt(1) << static_cast<std::size_t>(j + 1)) + t;
    Interval ci = child_iv(t);
    // the child interval must dodge every budget below f(child)
    if (!disjoint_from(ci, placed, std::min<std::int64_t>(
                                       kmax + 1, f_child > 1000000 ? kmax + 1
                                                                   : f_child.convert_to<std::int64_t>())))
      throw std::logic_error("nano witness: chosen child not disjoint from its prefix");
    step.index = child;
    step.interval = ci;
    step.bound = nano::f_of(child);
    step.threats_checked = std::move(checked);
    step.survivor_count_floor = (child_count - threatened).convert_to<std::int64_t>() >
                                        (std::int64_t{1} << 40)
                                    ? (std::int64_t{1} << 40)
                                    : (child_count - threatened).convert_to<std::int64_t>();
    chain.steps.push_back(std::move(step));
    cur = ci;
    cur_index = child;
  }

  const NanoChainStep& last = chain.steps.back();
  chain.status = last.bound > kmax ? "defeated" : "inconclusive";
  return chain;
}

bool verify_nano_chain(const nano::Scheme& sch, const std::vector<PlacedBudget>& placed,
                       const NanoChain& chain, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (chain.steps.empty()) return fail("empty chain");
  const std::int64_t kmax = max_index(placed);
  // step 0 must be a root with the pinned interval
  if (chain.steps[0].index != 0 && chain.steps[0].index != 1) return fail("bad root index");
  if (!chain.steps[0].interval.has_value()) return fail("root interval missing");
  Interval root = sch.root_interval(static_cast<int>(chain.steps[0].index.convert_to<std::int64_t>()));
  if (!(root == *chain.steps[0].interval)) return fail("root interval mismatch");

  BigInt prev_bound = 0;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const NanoChainStep& s = chain.steps[i];
    if (i > 0 && s.index >= 0) {
      const NanoChainStep& p = chain.steps[i - 1];
      if (p.index >= 0) {
        // T-membership: level(child) == parent index
        if (nano::level_of(s.index) != p.index.convert_to<std::int64_t>())
          return fail("step " + std::to_string(i) + " not a child of its predecessor");
      }
      if (s.interval.has_value() && p.interval.has_value() &&
          !contains(*p.interval, *s.interval))
        return fail("nesting violated at step " + std::to_string(i));
    }
    BigInt bound = s.bound;
    if (i > 0 && bound <= prev_bound) return fail("bounds not strictly increasing");
    prev_bound = bound;
    if (s.interval.has_value()) {
      for (const auto& pb : placed) {
        if (BigInt(static_cast<std::int64_t>(pb.index)) >= bound) continue;
        if (intersects(*s.interval, pb.interval))
          return fail("step " + std::to_string(i) + " meets budget " +
                      std::to_string(pb.index));
      }
    } else {
      // interval-free steps are only legal once every budget is excluded
      if (!(chain.steps[i - 1].bound > kmax))
        return fail("interval-free step before budgets were exhausted");
    }
  }
  if (chain.status == "defeated" && !(chain.steps.back().bound > kmax))
    return fail("defeated status without full exclusion");
  return true;
}

// ---------- pico ----------

namespace {

Numeral pico_bound(std::size_t k) {
  return Numeral::from_power(13, factorial(static_cast<std::int64_t>(k) + 1));
}

}  // namespace

PicoChain pico_witness_chain(const pico::Scheme& sch, std::int64_t banned_index,
                             const std::vector<PlacedBudget>& placed, int max_depth) {
  for (const auto& p : placed) {
    if (static_cast<std::int64_t>(p.index) == banned_index)
      throw std::invalid_argument("pico witness: banned index carries an interval");
    if (p.index > 100000) throw std::invalid_argument("pico witness: index too large");
    if (compare(p.interval.length(), pico_bound(p.index)) > 0)
      throw std::invalid_argument("pico witness: budget exceeds (1/13)^{(k+1)!}");
  }
  if (banned_index < 0 || banned_index > sch.config().n_max)
    throw std::invalid_argument("pico witness: banned index outside the horizon");

  PicoChain chain;
  chain.banned_index = banned_index;
  chain.budget_count = placed.size();
  const std::int64_t kmax = max_index(placed);
  const int N = static_cast<int>(banned_index);

  // initial survivor: some I^N_K, K < h(N), disjoint from budgets <= N
  std::int64_t pick = -1;
  std::int64_t survivors = 0;
  for (std::int64_t K = 0; K < sch.h(N); ++K) {
    Interval iv = sch.interval_of({N, K});
    if (!disjoint_from(iv, placed, static_cast<std::int64_t>(N) + 1)) continue;
    ++survivors;
    if (pick < 0 && sch.cell_of({N, K}) != nullptr) pick = K;
    if (survivors > 8 && pick >= 0) break;
  }
  if (survivors == 0)
    throw std::logic_error("pico witness: no initial survivor; budgets below eps forbid this");
  if (pick < 0) {
    chain.status = "inconclusive";
    return chain;
  }

  pico::IntervalId cur{N, pick};
  Interval cur_iv = sch.interval_of(cur);
  {
    PicoChainStep st;
    st.id = cur;
    st.interval = cur_iv;
    st.bound = N;
    chain.steps.push_back(st);
  }

  std::int64_t bound = N;
  for (int d = 0; d < max_depth && bound < kmax; ++d) {
    const pico::Cell* cell = sch.cell_of(cur);
    if (cell == nullptr) {
      chain.status = "inconclusive";
      return chain;
    }
    const auto& idx = cell->scheme->indices();
    std::int64_t b = cell->bs.front();
    PicoChainStep st;
    st.member_count = static_cast<std::int64_t>(idx.size());
    // counting logs
    {
      std::int64_t half = 0;
      for (const auto& p : placed) {
        std::int64_t pk = static_cast<std::int64_t>(p.index);
        if (pk >= idx.front() && pk <= idx.back() && intersects(cur_iv, p.interval)) ++half;
      }
      st.half_count = half;
      if (idx.size() <= 256) {
        std::int64_t third = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          Interval member = cell->scheme->placement_at(i).interval;
          for (const auto& p : placed) {
            std::int64_t pk = static_cast<std::int64_t>(p.index);
            if (pk < cell->scheme->L() || pk >= idx.front()) continue;
            if (intersects(member, p.interval)) {
              ++third;
              break;
            }
          }
        }
        st.third_count = third;
      }
    }
    // survivor member with index above the current bound and disjoint from
    // its own prefix; unless it already exhausts the budget list, it must
    // carry a populated cell so the descent can continue
    bool advanced = false;
    int attempts = 0;
    std::optional<std::size_t> dead_end;  // survivor without a deeper cell
    for (std::size_t i = 0; i < idx.size() && attempts < 512; ++i) {
      std::int64_t j = idx[i];
      if (j <= bound) continue;
      ++attempts;
      Interval member = cell->scheme->placement_at(i).interval;
      if (!disjoint_from(member, placed, j + 1)) continue;
      pico::IntervalId cand{cell->spaced_at, j};
      if (j < kmax && sch.cell_of(cand) == nullptr) {
        if (!dead_end.has_value()) dead_end = i;
        continue;
      }
      cur = cand;
      cur_iv = member;
      bound = j;
      st.id = cur;
      st.interval = member;
      st.bound = j;
      chain.steps.push_back(st);
      advanced = true;
      break;
    }
    if (!advanced && dead_end.has_value()) {
      // no continuable survivor; record the dead end honestly
      chain.status = "inconclusive";
      return chain;
    }
    if (!advanced) {
      chain.status = "inconclusive";
      return chain;
    }
  }
  chain.status = bound >= kmax ? "defeated" : "inconclusive";
  return chain;
}

bool verify_pico_chain(const pico::Scheme& sch, const std::vector<PlacedBudget>& placed,
                       const PicoChain& chain, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (chain.steps.empty()) return fail("empty chain");
  const std::int64_t kmax = max_index(placed);
  for (const auto& p : placed)
    if (static_cast<std::int64_t>(p.index) == chain.banned_index)
      return fail("banned index used");
  const PicoChainStep& first = chain.steps[0];
  if (first.id.step != chain.banned_index || !sch.is_initial(first.id))
    return fail("chain must start at an initial of the banned step");
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const PicoChainStep& s = chain.steps[i];
    if (!(sch.interval_of(s.id) == s.interval)) return fail("interval mismatch");
    if (i > 0) {
      if (!contains(chain.steps[i - 1].interval, s.interval))
        return fail("nesting violated");
      if (s.bound <= chain.steps[i - 1].bound) return fail("bounds not increasing");
    }
    for (const auto& p : placed) {
      if (static_cast<std::int64_t>(p.index) > s.bound) continue;
      if (intersects(s.interval, p.interval))
        return fail("step " + std::to_string(i) + " meets budget " + std::to_string(p.index));
    }
  }
  if (chain.status == "defeated" && chain.steps.back().bound < kmax)
    return fail("defeated status without covering the whole budget list");
  return true;
}

// ---------- spacing conditions ----------

SpacingReport spacing_condition_check(const spacing::Scheme& sch, std::int64_t b) {
  SpacingReport rep;
  rep.b = b;
  auto ps = sch.placements_for(b);
  rep.member_count = static_cast<std::int64_t>(ps.size());
  // (i)
  rep.lengths_ok = true;
  for (const auto& p : ps) {
    Numeral expect = Numeral::from_power(13, factorial(sch.m() + 1) * factorial(p.k + 1));
    if (!(p.interval.length() == expect)) rep.lengths_ok = false;
  }
  // (ii) over all placements of the scheme, not just this b
  rep.distances_ok = true;
  auto all = sch.placements();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      std::int64_t l = std::min(all[i].k, all[j].k);
      if (lt(distance(all[i].interval, all[j].interval),
             Numeral::from_power(13, factorial(l + 1))))
        rep.distances_ok = false;
    }
  }
  // (iii): exact sliding-window hit counts, windows L <= k < 4^b
  std::vector<Interval> raw;
  for (const auto& p : ps) raw.push_back(p.interval);
  IntervalSet set = normalize_union(std::move(raw));
  std::int64_t wmax = 1;
  for (int i = 0; i < b; ++i) wmax *= 4;
  for (std::int64_t k = sch.L(); k < wmax; ++k) {
    int h = max_hit_count(set, Numeral::from_power(13, factorial(k + 1)));
    rep.per_window_hits.push_back(h);
    rep.hit_total += h;
  }
  rep.third_strict = 3 * rep.hit_total < rep.member_count;
  rep.third_nonstrict = 3 * rep.hit_total <= rep.member_count;
  return rep;
}

// ---------- candidate covers and demos ----------

std::vector<PlacedBudget> nano_candidate_cover(const std::string& generator,
                                               std::uint64_t seed, int stage_depth,
                                               std::size_t budget_count) {
  nano::Scheme sch;
  auto stage = sch.stage(stage_depth);
  std::vector<Interval> raw;
  for (const auto& e : stage.entries) raw.push_back(e.interval);
  IntervalSet target = normalize_union(std::move(raw));

  // strictly-below-bound lengths: bound * (1 - 2^-32)
  BudgetList budgets;
  for (std::size_t k = 0; k < budget_count; ++k) {
    Numeral b = nano_bound(k);
    budgets.lengths.push_back(sub(b, b.shifted(BigInt(32))));
  }

  std::vector<PlacedBudget> placed;
  if (generator == "greedy") {
    CoverProblem p{target, budgets};
    placed = greedy_cover(p).placement;
  } else if (generator == "solver") {
    // solver on a feasible prefix of the target, then random fill
    std::vector<Interval> comps = target.components();
    std::vector<Interval> prefix(comps.begin(),
                                 comps.begin() + std::min<std::size_t>(2, comps.size()));
    CoverProblem p{normalize_union(prefix), budgets};
    auto v = solve_feasible(p, budget_count);
    if (v.feasible) placed = v.placement;
  } else if (generator != "random") {
    throw std::invalid_argument("unknown nano candidate generator");
  }

  std::mt19937_64 rng(seed);
  std::set<std::size_t> used;
  for (const auto& p : placed) used.insert(p.index);
  for (std::size_t k = 0; k < budget_count; ++k) {
    if (used.count(k)) continue;
    // random dyadic position in [0, 1)
    std::uint64_t r = rng() & ((std::uint64_t{1} << 24) - 1);
    Numeral lo = Numeral::from_int(2, static_cast<std::int64_t>(r)).shifted(BigInt(24));
    placed.push_back(PlacedBudget{k, Interval(lo, add(lo, budgets.lengths[k]))});
  }
  return placed;
}

NanoDemoReport nano_non_ideal_demo(const std::vector<EpsilonSpec>& eps_list, int trials,
                                   std::uint64_t seed) {
  NanoDemoReport rep;
  auto src = procedures::make_nano_scheme_source(2);
  int depth = 0;
  for (const auto& e : eps_list)
    depth = std::max<int>(depth, static_cast<int>(e.t.convert_to<std::int64_t>()) - 1);
  auto dec = procedures::decompose_m(*src, PowerFamily::nano(), 2, depth);

  for (std::size_t j = 0; j < 2; ++j) {
    for (const auto& eps : eps_list) {
      int n = static_cast<int>(eps.t.convert_to<std::int64_t>()) - 1;
      const auto& cover = dec.part_covers[j][static_cast<std::size_t>(n)];
      std::string why;
      bool ok = procedures::validate_family_cover(dec.part_stages[j], PowerFamily::nano(),
                                                  eps, cover, &why);
      if (!ok) rep.parts_valid = false;
      std::ostringstream os;
      os << "part " << j << " at eps=2^-" << eps.t.str() << ": "
         << (ok ? "valid" : "INVALID: " + why) << " (" << cover.size() << " entries)";
      rep.part_certificates.push_back(os.str());
    }
  }

  nano::Scheme sch;
  const char* gens[] = {"random", "greedy", "solver"};
  for (int t = 0; t < trials; ++t) {
    DefeatRecord rec;
    rec.generator = gens[t % 3];
    rec.seed = seed + static_cast<std::uint64_t>(t);
    int stage_depth = t % 3 == 0 ? t % 2 : 1;
    auto placed = nano_candidate_cover(rec.generator, rec.seed, stage_depth, 16);
    auto chain = nano_witness_chain(sch, placed, 3);
    std::string why;
    rec.defeated = chain.status == "defeated" && verify_nano_chain(sch, placed, chain, &why);
    rec.chain_depth = static_cast<int>(chain.steps.size()) - 1;
    if (!rec.defeated) rep.all_defeated = false;
    rep.defeats.push_back(rec);
  }
  return rep;
}

std::vector<PlacedBudget> pico_candidate_cover(const pico::Scheme& sch,
                                               std::int64_t banned_index,
                                               std::uint64_t seed,
                                               std::size_t budget_count) {
  std::mt19937_64 rng(seed);
  std::vector<PlacedBudget> placed;

  std::vector<PlacedBudget> greedy_part;
  if (seed % 2 == 0) {
    // greedy attack on the step-0 stage
    auto stage = sch.stage(0, 63);
    std::vector<Interval> raw;
    for (auto& [id, iv] : stage) raw.push_back(iv);
    BudgetList budgets;
    for (std::size_t k = 0; k < budget_count; ++k) budgets.lengths.push_back(pico_bound(k));
    budgets.banned = {static_cast<std::size_t>(banned_index)};
    CoverProblem p{normalize_union(std::move(raw)), budgets};
    greedy_part = greedy_cover(p).placement;
  }
  std::set<std::size_t> used;
  for (const auto& g : greedy_part) {
    placed.push_back(g);
    used.insert(g.index);
  }
  for (std::size_t k = 0; k < budget_count; ++k) {
    if (used.count(k) || static_cast<std::int64_t>(k) == banned_index) continue;
    // random base-13 position across the initial span [0, 54)
    std::uint64_t r = rng() % (54 * 13 * 13);
    Numeral lo = Numeral::from_int(13, static_cast<std::int64_t>(r)).shifted(BigInt(2));
    placed.push_back(PlacedBudget{k, Interval(lo, add(lo, pico_bound(k)))});
  }
  return placed;
}

PicoControl pico_control_cover(const pico::Scheme& sch) {
  PicoControl ctl;
  // finite deep-stage sample: the step-2 members of the first populated
  // step-2 cell, plus the point x = -1
  const pico::Cell* cell = nullptr;
  for (const auto& c : sch.cells())
    if (c.spaced_at == 2) {
      cell = &c;
      break;
    }
  if (cell == nullptr) throw std::logic_error("pico control: no step-2 cell populated");
  std::vector<Interval> raw;
  Numeral x = sch.point_x();
  raw.emplace_back(x, x);
  std::vector<PlacedBudget> cover;
  // J_0 around x, length 12/169 < 1/13
  Numeral half = Numeral::from_power(13, 2).scaled(6);
  cover.push_back(PlacedBudget{0, Interval(sub(x, half), add(x, half))});
  for (std::int64_t j : cell->scheme->indices()) {
    Interval iv = sch.interval_of({2, j});
    raw.push_back(iv);
    cover.push_back(PlacedBudget{static_cast<std::size_t>(j), iv});
  }
  ctl.target = normalize_union(std::move(raw));
  ctl.cover = std::move(cover);
  return ctl;
}

PicoDemoReport pico_point_demo(std::int64_t banned_index, int trials, std::uint64_t seed) {
  PicoDemoReport rep;
  pico::Scheme sch;

  // stage certificates: X_m stage prefix covered by its own intervals at
  // eps = 13^-t with t <= (m+1)!
  for (int m = 0; m <= 2; ++m) {
    std::int64_t t = factorial(m + 1).convert_to<std::int64_t>();
    auto stage = sch.stage(m, 63);
    std::vector<procedures::LabeledEntry> entries;
    std::vector<Interval> raw;
    for (auto& [id, iv] : stage) {
      entries.push_back({id.index, iv});
      raw.push_back(iv);
    }
    EpsilonSpec eps(13, t);
    std::string why;
    bool ok = procedures::validate_family_cover(normalize_union(std::move(raw)),
                                                PowerFamily::pico(), eps, entries, &why);
    if (!ok) rep.stages_valid = false;
    std::ostringstream os;
    os << "X_" << m << " stage at eps=13^-" << t << ": " << (ok ? "valid" : "INVALID: " + why)
       << " (" << entries.size() << " entries)";
    rep.stage_certificates.push_back(os.str());
  }

  Numeral x = sch.point_x();
  for (int t = 0; t < trials; ++t) {
    DefeatRecord rec;
    rec.generator = t % 2 == 0 ? "greedy+random" : "random";
    rec.seed = seed + static_cast<std::uint64_t>(t);
    auto placed = pico_candidate_cover(sch, banned_index, rec.seed, 48);
    for (const auto& p : placed)
      if (contains_point(p.interval, x)) rep.banned_covers_miss_x = false;
    auto chain = pico_witness_chain(sch, banned_index, placed, 4);
    std::string why;
    rec.defeated = chain.status == "defeated" && verify_pico_chain(sch, placed, chain, &why);
    rec.chain_depth = static_cast<int>(chain.steps.size()) - 1;
    if (!rec.defeated) rep.all_defeated = false;
    rep.defeats.push_back(rec);
  }

  // control run: with index 0 free, the stage sample plus x is coverable
  PicoControl ctl = pico_control_cover(sch);
  BudgetList budgets;
  std::size_t maxidx = 0;
  for (const auto& p : ctl.cover) maxidx = std::max(maxidx, p.index);
  for (std::size_t k = 0; k <= maxidx; ++k) budgets.lengths.push_back(pico_bound(k));
  std::string why;
  rep.control_cover_valid = validate_cover(ctl.target, budgets, ctl.cover, &why);
  for (const auto& p : ctl.cover)
    if (contains_point(p.interval, x)) rep.control_covers_x = true;
  return rep;
}

}  // namespace microset::witnesses
