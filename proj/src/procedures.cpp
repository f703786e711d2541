#include "microset/procedures.hpp"

#include <algorithm>
#include <map>

namespace microset::procedures {

namespace {

struct AssemblyShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_disjoint_sorted(const std::vector<LabeledEntry>& entries) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!lt(entries[i - 1].interval.hi, entries[i].interval.lo))
      throw std::logic_error("cover source produced overlapping or unsorted entries");
  }
}

}  // namespace

bool validate_family_cover(const IntervalSet& target, const PowerFamily& fam,
                           const EpsilonSpec& eps,
                           const std::vector<LabeledEntry>& entries, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::set<std::int64_t> seen;
  std::vector<Interval> pieces;
  for (const LabeledEntry& e : entries) {
    if (e.index < 0) return fail("negative index");
    if (!seen.insert(e.index).second) return fail("duplicate index");
    Numeral budget = budget_length(fam, e.index, eps);
    if (compare(e.interval.length(), budget) > 0)
      return fail("entry " + std::to_string(e.index) + " exceeds its budget");
    pieces.push_back(e.interval);
  }
  if (!covers(normalize_union(std::move(pieces)), target))
    return fail("entries do not cover the target");
  return true;
}

namespace {

class PointSource final : public CoverSource {
 public:
  explicit PointSource(std::vector<Numeral> pts) {
    if (pts.empty()) throw std::invalid_argument("point source needs points");
    std::sort(pts.begin(), pts.end(),
              [](const Numeral& a, const Numeral& b) { return compare(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Numeral& a, const Numeral& b) { return eq(a, b); }),
              pts.end());
    points_ = std::move(pts);
  }

  int base() const override { return points_[0].base(); }
  int max_depth() const override { return 0; }

  IntervalSet stage_set(int) const override {
    std::vector<Interval> raw;
    for (const Numeral& p : points_) raw.emplace_back(p, p);
    return normalize_union(std::move(raw));
  }

  std::vector<LabeledEntry> family_cover(const PowerFamily&,
                                         const EpsilonSpec&) const override {
    std::vector<LabeledEntry> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
      out.push_back({static_cast<std::int64_t>(i), Interval(points_[i], points_[i])});
    return out;
  }

 private:
  std::vector<Numeral> points_;
};

class NanoSchemeSource final : public CoverSource {
 public:
  explicit NanoSchemeSource(int max_stage) : max_stage_(max_stage) {
    if (max_stage_ < 0 || max_stage_ > 2)
      throw std::invalid_argument("nano scheme source: stage out of range");
    nano::Scheme scheme;
    for (int n = 0; n <= max_stage_; ++n) stages_.push_back(scheme.stage(n));
  }

  int base() const override { return 2; }
  int max_depth() const override { return max_stage_; }

  IntervalSet stage_set(int depth) const override {
    const auto& st = stages_[static_cast<std::size_t>(std::min(depth, max_stage_))];
    std::vector<Interval> raw;
    for (const auto& e : st.entries) raw.push_back(e.interval);
    return normalize_union(std::move(raw));
  }

  std::vector<LabeledEntry> family_cover(const PowerFamily& fam,
                                         const EpsilonSpec& eps) const override {
    // smallest stage whose entries obey the budgets at eps; nested stages
    // mean any stage covers the deepest stage set
    for (int n = 0; n <= max_stage_; ++n) {
      const auto& st = stages_[static_cast<std::size_t>(n)];
      std::vector<LabeledEntry> out;
      bool ok = true;
      for (std::size_t i = 0; i < st.entries.size() && ok; ++i) {
        Numeral budget = budget_length(fam, static_cast<std::int64_t>(i), eps);
        if (compare(st.entries[i].interval.length(), budget) > 0) ok = false;
        out.push_back({static_cast<std::int64_t>(i), st.entries[i].interval});
      }
      if (ok) return out;
    }
    throw std::overflow_error(
        "nano scheme source: no stage within the horizon satisfies the budgets");
  }

 private:
  int max_stage_;
  std::vector<nano::StageResult> stages_;
};

}  // namespace

std::unique_ptr<CoverSource> make_point_source(std::vector<Numeral> points) {
  return std::make_unique<PointSource>(std::move(points));
}

std::unique_ptr<CoverSource> make_nano_scheme_source(int max_stage) {
  return std::make_unique<NanoSchemeSource>(max_stage);
}

namespace {

EpsilonSpec eps_below_budget(const PowerFamily& fam, const EpsilonSpec& eps,
                             std::int64_t idx) {
  // smallest exponent t' with f_0(eps') < f_idx(eps):
  // t' * e(0) > t * e(idx)
  BigInt e0 = fam.exponent(0);
  BigInt target = eps.t * fam.exponent(idx);
  BigInt tp = target / e0 + 1;
  return EpsilonSpec(eps.base, tp);
}

ShiftResult compact_shift_attempt(const CoverSource& src, const PowerFamily& fam,
                                  std::int64_t k_report, std::int64_t k,
                                  const EpsilonSpec& eps) {
  ShiftResult res;
  res.effective_k = static_cast<int>(k);

  // eps': coarse cover whose members one later budget can swallow
  res.eps_prime = eps_below_budget(fam, eps, 2 * k + 1);
  std::vector<LabeledEntry> coverP = src.family_cover(fam, res.eps_prime);
  check_disjoint_sorted(coverP);
  if (coverP.empty()) throw std::logic_error("empty family cover");
  std::int64_t lp = std::max<std::int64_t>(k + 1, static_cast<std::int64_t>(coverP.size()) - 1);

  // eps'': fine cover, below every later budget and below the bin gaps
  EpsilonSpec eps2 = eps_below_budget(fam, eps, k + lp + 1);
  {
    std::vector<Interval> bins_raw;
    for (const auto& e : coverP) bins_raw.push_back(e.interval);
    auto gaps = min_gap(normalize_union(std::move(bins_raw)));
    if (gaps.has_value()) {
      // base^-t'' < gap suffices since f_0 only shrinks it further
      BigInt need = gaps->leading_exp() + 1;
      if (eps2.t < need) eps2 = EpsilonSpec(eps.base, need);
    }
  }
  res.eps_second = eps2;
  std::vector<LabeledEntry> coverS = src.family_cover(fam, eps2);
  check_disjoint_sorted(coverS);

  const std::int64_t bins = static_cast<std::int64_t>(coverP.size());
  const std::int64_t items = static_cast<std::int64_t>(coverS.size());
  res.bins = static_cast<int>(bins);
  res.items = static_cast<int>(std::min(items, k + lp + 1));

  // assign each low item to the unique bin it meets; clip it to that bin
  std::int64_t low_end = std::min(items - 1, k + lp);  // inclusive
  std::vector<std::int64_t> bin_of(static_cast<std::size_t>(low_end + 1), -1);
  std::vector<Interval> clipped(static_cast<std::size_t>(low_end + 1));
  std::vector<std::int64_t> occupancy(static_cast<std::size_t>(bins), 0);
  for (std::int64_t i = 0; i <= low_end; ++i) {
    int hits = 0;
    for (std::int64_t b = 0; b < bins; ++b) {
      if (intersects(coverS[static_cast<std::size_t>(i)].interval,
                     coverP[static_cast<std::size_t>(b)].interval)) {
        ++hits;
        bin_of[static_cast<std::size_t>(i)] = b;
      }
    }
    if (hits != 1)
      throw std::logic_error("fine cover entry meets " + std::to_string(hits) +
                             " bins; expected exactly 1");
    const Interval& item = coverS[static_cast<std::size_t>(i)].interval;
    const Interval& bin = coverP[static_cast<std::size_t>(bin_of[static_cast<std::size_t>(i)])].interval;
    clipped[static_cast<std::size_t>(i)] =
        Interval(max(item.lo, bin.lo), min(item.hi, bin.hi));
    ++occupancy[static_cast<std::size_t>(bin_of[static_cast<std::size_t>(i)])];
  }

  // top-k bins by occupancy (ties: lower index)
  std::vector<std::int64_t> order(static_cast<std::size_t>(bins));
  for (std::int64_t b = 0; b < bins; ++b) order[static_cast<std::size_t>(b)] = b;
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return occupancy[static_cast<std::size_t>(a)] > occupancy[static_cast<std::size_t>(b)];
  });
  std::int64_t chosen_count = std::min<std::int64_t>(k, bins);
  std::set<std::int64_t> chosen(order.begin(), order.begin() + chosen_count);
  std::int64_t covered = 0;
  for (std::int64_t b : chosen) covered += occupancy[static_cast<std::size_t>(b)];
  res.top_k_occupancy = static_cast<int>(covered);
  res.pigeonhole_applicable = items >= bins + k && bins >= k;
  if (res.pigeonhole_applicable && covered < 2 * k)
    throw std::logic_error("pigeonhole bound violated: top-k bins hold fewer than 2k items");

  // assemble
  std::vector<LabeledEntry> out;
  std::int64_t next_bin_slot = k + 1;
  for (std::int64_t b : chosen) {
    Numeral budget = budget_length(fam, next_bin_slot, eps);
    const Interval& bin = coverP[static_cast<std::size_t>(b)].interval;
    if (compare(bin.length(), budget) > 0)
      throw std::logic_error("bin does not fit its budget slot");
    out.push_back({next_bin_slot, bin});
    ++next_bin_slot;
  }
  // singles for uncovered low items
  std::int64_t slot = 2 * k + 1;
  for (std::int64_t i = 0; i <= low_end; ++i) {
    if (chosen.count(bin_of[static_cast<std::size_t>(i)])) continue;
    if (slot > k + lp) throw AssemblyShort("singles exhausted");
    Numeral budget = budget_length(fam, slot, eps);
    if (compare(clipped[static_cast<std::size_t>(i)].length(), budget) > 0)
      throw std::logic_error("single does not fit its budget slot");
    out.push_back({slot, clipped[static_cast<std::size_t>(i)]});
    ++slot;
  }
  // identity tail
  for (std::int64_t i = k + lp + 1; i < items; ++i) {
    const Interval& item = coverS[static_cast<std::size_t>(i)].interval;
    Numeral budget = budget_length(fam, i, eps);
    if (compare(item.length(), budget) > 0)
      throw std::logic_error("tail item does not fit its own budget");
    out.push_back({i, item});
  }
  std::sort(out.begin(), out.end(),
            [](const LabeledEntry& a, const LabeledEntry& b) { return a.index < b.index; });
  for (const auto& e : out)
    if (e.index <= k_report) throw std::logic_error("output index not above k");
  res.entries = std::move(out);
  return res;
}

// Fallback assembly: one deeper cover riding at indices i + k + 1, each
// entry checked exactly against its slot budget. Works whenever the family's
// exponent growth lets a uniformly deeper epsilon absorb the index shift.
// Uses the deepest epsilon the source can still answer (bisected when the
// ideal one lies past its stage horizon).
ShiftResult shifted_identity_attempt(const CoverSource& src, const PowerFamily& fam,
                                     std::int64_t k, const EpsilonSpec& eps) {
  ShiftResult res;
  res.effective_k = static_cast<int>(k);
  EpsilonSpec deep = eps_below_budget(fam, eps, k + 1);
  std::vector<LabeledEntry> cover;
  bool have = false;
  try {
    cover = src.family_cover(fam, deep);
    have = true;
  } catch (const std::overflow_error&) {
  }
  if (!have) {
    // largest t in [eps.t, deep.t) the source still answers
    BigInt lo = eps.t, hi = deep.t - 1;
    std::optional<BigInt> best;
    while (lo <= hi) {
      BigInt mid = (lo + hi) / 2;
      try {
        src.family_cover(fam, EpsilonSpec(eps.base, mid));
        best = mid;
        lo = mid + 1;
      } catch (const std::overflow_error&) {
        hi = mid - 1;
      }
    }
    if (!best.has_value())
      throw std::overflow_error("shifted identity: source cannot cover at any usable eps");
    deep = EpsilonSpec(eps.base, *best);
    cover = src.family_cover(fam, deep);
  }
  res.eps_prime = deep;
  res.eps_second = deep;
  check_disjoint_sorted(cover);
  for (const auto& e : cover) {
    std::int64_t slot = e.index + k + 1;
    if (compare(e.interval.length(), budget_length(fam, slot, eps)) > 0)
      throw AssemblyShort("shifted identity entry exceeds its slot budget");
    res.entries.push_back({slot, e.interval});
  }
  res.bins = 0;
  res.items = static_cast<int>(cover.size());
  return res;
}

}  // namespace

ShiftResult compact_shift(const CoverSource& src, const PowerFamily& fam, std::int64_t k,
                          const EpsilonSpec& eps) {
  if (k < 0) throw std::invalid_argument("compact_shift: k must be >= 0");
  std::string last;
  bool horizon = false;
  // Restarting with a larger k only shrinks the admissible output set, so
  // the result stays a valid answer for the requested k; once k reaches the
  // bin count every bin is covered directly. Epsilon escalation only deepens
  // with keff, so the first horizon overflow ends the restarts.
  for (std::int64_t keff = k; keff <= k + 600; ++keff) {
    try {
      return compact_shift_attempt(src, fam, k, keff, eps);
    } catch (const AssemblyShort& e) {
      last = e.what();
    } catch (const std::overflow_error& e) {
      last = e.what();
      horizon = true;
      break;
    }
  }
  // Shifted identity: its feasibility is monotone in k, one try suffices.
  try {
    return shifted_identity_attempt(src, fam, k, eps);
  } catch (const AssemblyShort& e) {
    last = e.what();
  } catch (const std::overflow_error& e) {
    throw std::overflow_error(std::string("compact_shift: beyond the source horizon: ") +
                              e.what());
  }
  if (horizon)
    throw std::overflow_error("compact_shift: beyond the source horizon: " + last);
  throw std::runtime_error("compact_shift: assembly failed: " + last);
}

SigmaUnionResult sigma_union_cover(const std::vector<const CoverSource*>& srcs,
                                   const PowerFamily& fam, const EpsilonSpec& eps) {
  SigmaUnionResult res;
  std::int64_t k = 0;
  for (const CoverSource* src : srcs) {
    ShiftResult r = compact_shift(*src, fam, k, eps);
    if (!r.entries.empty()) k = r.entries.back().index;
    res.joint.insert(res.joint.end(), r.entries.begin(), r.entries.end());
    res.per_source.push_back(std::move(r));
  }
  return res;
}

DecompositionResult decompose_m(const CoverSource& src, const PowerFamily& fam,
                                std::int64_t m, int depth) {
  if (m < 1) throw std::invalid_argument("decompose_m: m must be >= 1");
  if (depth < 0) throw std::invalid_argument("decompose_m: negative depth");
  DecompositionResult res;
  res.m = m;
  PowerFamily shifted = shift_family(fam, m);

  // Part stages: residues of the finest cover the source can answer. Each
  // stage piece joins the part of the cover entry holding it.
  IntervalSet stage = src.stage_set(src.max_depth());
  EpsilonSpec raw_eps(src.base(), depth + 1);
  {
    BigInt lo = depth + 1, hi = 1 << 16;
    std::optional<BigInt> best;
    while (lo <= hi) {
      BigInt mid = (lo + hi) / 2;
      try {
        src.family_cover(shifted, EpsilonSpec(src.base(), mid));
        best = mid;
        lo = mid + 1;
      } catch (const std::overflow_error&) {
        hi = mid - 1;
      }
    }
    if (best.has_value()) raw_eps = EpsilonSpec(src.base(), *best);
  }
  std::vector<LabeledEntry> raw = src.family_cover(shifted, raw_eps);
  std::vector<std::vector<Interval>> part_raw(static_cast<std::size_t>(m));
  for (const Interval& comp : stage.components()) {
    for (const LabeledEntry& e : raw) {
      if (!intersects(comp, e.interval)) continue;
      Interval piece(max(comp.lo, e.interval.lo), min(comp.hi, e.interval.hi));
      part_raw[static_cast<std::size_t>(e.index % m)].push_back(piece);
    }
  }
  for (auto& pr : part_raw) res.part_stages.push_back(normalize_union(std::move(pr)));

  // Blocks: per part and per eps_n a fresh greedy cover against the shifted
  // budget tail (f_{k+l_n})_k, interleaved into flat slots m*(k+l_n)+j.
  res.part_covers.assign(static_cast<std::size_t>(m), {});
  res.cuts.push_back(0);
  for (int n = 0; n <= depth; ++n) {
    EpsilonSpec eps_n(2, n + 1);
    std::int64_t ln = res.cuts.back();
    std::int64_t c_n = 0;
    std::vector<std::vector<PlacedBudget>> covers(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
      const IntervalSet& part = res.part_stages[static_cast<std::size_t>(j)];
      if (part.empty()) continue;
      bool done = false;
      for (std::int64_t budget_count = 8; budget_count <= 1024 && !done;
           budget_count *= 2) {
        BudgetList budgets;
        for (std::int64_t k = 0; k < budget_count; ++k)
          budgets.lengths.push_back(budget_length(fam, k + ln, eps_n));
        CoverProblem prob{part, budgets};
        CoverVerdict v = greedy_cover(prob);
        if (v.feasible) {
          covers[static_cast<std::size_t>(j)] = v.placement;
          done = true;
        }
      }
      if (!done)
        throw std::runtime_error("decompose_m: part " + std::to_string(j) +
                                 " not coverable at eps_" + std::to_string(n) +
                                 " within the budget horizon");
      c_n = std::max<std::int64_t>(
          c_n, static_cast<std::int64_t>(covers[static_cast<std::size_t>(j)].size()));
    }
    std::vector<LabeledEntry> block;
    for (std::int64_t j = 0; j < m; ++j) {
      std::vector<LabeledEntry> part_cover;
      // greedy places budgets longest-first = ascending k here
      std::vector<PlacedBudget> sorted = covers[static_cast<std::size_t>(j)];
      std::sort(sorted.begin(), sorted.end(),
                [](const PlacedBudget& a, const PlacedBudget& b) { return a.index < b.index; });
      for (const PlacedBudget& pb : sorted) {
        std::int64_t k = static_cast<std::int64_t>(pb.index);
        part_cover.push_back({k, pb.interval});
        block.push_back({m * (k + ln) + j, pb.interval});
      }
      res.part_covers[static_cast<std::size_t>(j)].push_back(std::move(part_cover));
    }
    std::sort(block.begin(), block.end(),
              [](const LabeledEntry& a, const LabeledEntry& b) { return a.index < b.index; });
    res.blocks.push_back(std::move(block));
    res.cuts.push_back(ln + std::max<std::int64_t>(c_n, 1));
  }
  return res;
}

NullCoverInput parametric_null_input(int rows, int cols) {
  NullCoverInput in;
  for (int m = 0; m < rows; ++m) {
    std::vector<Numeral> row;
    for (int n = 0; n < cols; ++n)
      row.push_back(Numeral::from_power(2, BigInt(m + 3 + n)));
    in.rows.push_back(std::move(row));
  }
  return in;
}

NullToFamilyResult null_to_family(const NullCoverInput& inp, int m_count, int n_count) {
  const int R = static_cast<int>(inp.rows.size());
  if (R == 0) throw std::invalid_argument("null_to_family: empty table");
  // validate the input invariants exactly
  for (int m = 0; m < R; ++m) {
    const auto& row = inp.rows[static_cast<std::size_t>(m)];
    Numeral sum = Numeral::zero(2);
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (row[n].sign() <= 0) throw std::invalid_argument("null table needs positive lengths");
      if (n > 0 && compare(row[n], row[n - 1]) > 0)
        throw std::invalid_argument("null table rows must be nonincreasing");
      sum = add(sum, row[n]);
    }
    if (!lt(sum, Numeral::from_power(2, m + 1)))
      throw std::invalid_argument("null table row sum bound violated");
  }

  NullToFamilyResult res;
  res.a.assign(static_cast<std::size_t>(m_count), {});
  for (int m = 0; m < m_count; ++m) {
    for (int n = 0; n < n_count; ++n) {
      // a_{m,n} = max over j >= m of |I^j_n| with the certified stopping rule:
      // every row i > j is bounded by its sum bound 2^-(i+1) <= 2^-(j+2), so
      // once that is below the current max no deeper row can win.
      Numeral best = Numeral::zero(2);
      bool certified = false;
      for (int j = m; j < R; ++j) {
        const auto& row = inp.rows[static_cast<std::size_t>(j)];
        if (static_cast<std::size_t>(n) < row.size() &&
            compare(row[static_cast<std::size_t>(n)], best) > 0)
          best = row[static_cast<std::size_t>(n)];
        // rows beyond j hold values strictly below 2^-(j+2)
        if (le(Numeral::from_power(2, j + 2), best)) {
          certified = true;
          break;
        }
      }
      if (!certified)
        throw std::runtime_error(
            "null_to_family: stopping rule never certified within the table");
      res.a[static_cast<std::size_t>(m)].push_back(best);
    }
  }

  // the four properties, exact
  for (int m = 0; m < m_count; ++m) {
    Numeral sum = Numeral::zero(2);
    for (int n = 0; n < n_count; ++n) {
      const Numeral& amn = res.a[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
      sum = add(sum, amn);
      if (m + 1 < m_count &&
          compare(res.a[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(n)], amn) > 0)
        res.monotone_in_m = false;
      if (n + 1 < n_count &&
          compare(res.a[static_cast<std::size_t>(m)][static_cast<std::size_t>(n + 1)], amn) > 0)
        res.chain_in_n = false;
      if (static_cast<std::size_t>(m) < inp.rows.size() &&
          static_cast<std::size_t>(n) < inp.rows[static_cast<std::size_t>(m)].size() &&
          compare(inp.rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)], amn) > 0)
        res.dominates_input = false;
      // finite surrogate of lim_j a_{j,n} = 0: a_{m,n} < 2^-(m+1)
      if (!lt(amn, Numeral::from_power(2, m + 1))) res.vanishing = false;
    }
    if (compare(sum, Numeral::from_power(2, m)) > 0) res.row_sum_bounded = false;
  }
  return res;
}

MergePlan smz_merge_case1(const std::vector<const CoverSource*>& pieces,
                          const std::vector<Numeral>& points, const PowerFamily& fam,
                          const EpsilonSpec& eps) {
  MergePlan plan;
  plan.case_tag = 1;
  std::int64_t next_reserved = 0;
  std::size_t rounds = std::max(points.size(), pieces.size());
  for (std::size_t i = 0; i < rounds; ++i) {
    if (i < points.size()) {
      // s_i holds a point interval of exactly the budget length
      plan.reserved.push_back(next_reserved);
      Numeral half = budget_length(fam, next_reserved, eps).shifted(BigInt(1));
      plan.cover.push_back(
          {next_reserved, Interval(sub(points[i], half), add(points[i], half))});
    }
    if (i < pieces.size()) {
      // the piece cover lives strictly between this reservation and the next
      ShiftResult r = compact_shift(*pieces[i], fam, next_reserved, eps);
      for (const auto& e : r.entries) plan.cover.push_back(e);
      next_reserved = r.entries.empty() ? next_reserved + 1 : r.entries.back().index + 1;
    } else {
      next_reserved += 1;
    }
  }
  std::sort(plan.cover.begin(), plan.cover.end(),
            [](const LabeledEntry& a, const LabeledEntry& b) { return a.index < b.index; });
  return plan;
}

MergePlan smz_merge_case2(const Case2Input& in, const std::vector<BigRat>& points,
                          const EpsilonSpec& eps) {
  MergePlan plan;
  plan.case_tag = 2;
  if (in.n < 0 || static_cast<std::size_t>(in.n) >= in.rows.size() ||
      static_cast<std::size_t>(in.m) >= in.rows.size() || in.m <= in.n)
    throw std::invalid_argument("case 2: need rows n < m within the presentation");
  const int level_n = in.first_level + in.n;
  const int level_m = in.first_level + in.m;
  // eps must exceed 2^-2^{level_n}: t < 2^{level_n}
  if (!(eps.base == 2 && eps.t < (BigInt(1) << static_cast<std::size_t>(level_n))))
    throw std::invalid_argument("case 2: requires eps > 2^-2^n");
  const auto& row_n = in.rows[static_cast<std::size_t>(in.n)];
  const auto& row_m = in.rows[static_cast<std::size_t>(in.m)];
  if (static_cast<std::size_t>(in.k) >= row_n.size())
    throw std::invalid_argument("case 2: k outside row n");
  const gdelta::RatInterval& K0 = row_n[static_cast<std::size_t>(in.k)];

  // T = indices of row m swallowed by K0
  std::vector<std::int64_t> T;
  for (std::size_t j = 0; j < row_m.size(); ++j)
    if (gdelta::rat_contains(K0, row_m[j])) T.push_back(static_cast<std::int64_t>(j));
  if (T.size() < points.size())
    throw std::invalid_argument("case 2: structural flag unsupported: T too small");

  // K_0 = I^n_k; K_{j+1} = I^m_j for j not in T; K_{t_i+1} = point interval
  plan.rat_cover.push_back(K0);
  std::set<std::int64_t> Tset(T.begin(), T.end());
  for (std::size_t j = 0; j < row_m.size(); ++j) {
    if (Tset.count(static_cast<std::int64_t>(j))) continue;
    plan.rat_cover.push_back(row_m[j]);
    // keep positions: entry index j+1 in the flat sequence
  }
  // rebuild as an index-ordered sequence including the point slots
  plan.rat_cover.clear();
  plan.rat_cover.push_back(K0);
  std::size_t point_i = 0;
  for (std::size_t j = 0; j < row_m.size(); ++j) {
    if (Tset.count(static_cast<std::int64_t>(j)) && point_i < points.size()) {
      // slot t_i + 1 holds J_i around the point, |J_i| <= 2^-(2^{m+j})
      gdelta::RatInterval ji;
      ji.center = points[point_i];
      ji.base = 2;
      ji.len_exp = BigInt(1) << static_cast<std::size_t>(level_m + static_cast<int>(j));
      plan.rat_cover.push_back(ji);
      ++point_i;
    } else if (Tset.count(static_cast<std::int64_t>(j))) {
      // swallowed by K0 and no point left: slot stays empty
      gdelta::RatInterval empty;
      empty.center = K0.center;
      empty.base = 2;
      empty.len_exp = BigInt(1) << static_cast<std::size_t>(level_m + static_cast<int>(j) + 1);
      plan.rat_cover.push_back(empty);
    } else {
      plan.rat_cover.push_back(row_m[j]);
    }
  }
  plan.notes.push_back("n=" + std::to_string(in.n) + " k=" + std::to_string(in.k) +
                       " m=" + std::to_string(in.m) + " |T|=" + std::to_string(T.size()));
  return plan;
}

bool validate_case2(const Case2Input& in, const std::vector<BigRat>& points,
                    const EpsilonSpec& eps, const MergePlan& plan, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  // budgets: |K_i| <= eps^{2^i} = 2^-(t*2^i), exponent-level comparison
  for (std::size_t i = 0; i < plan.rat_cover.size(); ++i) {
    BigInt budget_exp = eps.t * (BigInt(1) << static_cast<std::size_t>(i));
    if (plan.rat_cover[i].len_exp < budget_exp)
      return fail("entry " + std::to_string(i) + " exceeds the nano budget");
  }
  // coverage of the structure: every row-m interval is either swallowed by
  // K_0 or present as an entry; every point is inside its slot interval
  const auto& row_m = in.rows[static_cast<std::size_t>(in.m)];
  const gdelta::RatInterval& K0 = plan.rat_cover.at(0);
  for (std::size_t j = 0; j < row_m.size(); ++j) {
    bool swallowed = gdelta::rat_contains(K0, row_m[j]);
    bool present = false;
    for (std::size_t i = 1; i < plan.rat_cover.size(); ++i) {
      if (plan.rat_cover[i].center == row_m[j].center &&
          plan.rat_cover[i].len_exp == row_m[j].len_exp)
        present = true;
    }
    if (!swallowed && !present)
      return fail("row-m interval " + std::to_string(j) + " neither swallowed nor present");
  }
  for (const BigRat& p : points) {
    bool covered = false;
    for (const auto& iv : plan.rat_cover)
      if (gdelta::rat_contains_point(iv, p)) covered = true;
    if (!covered) return fail("point not covered");
  }
  return true;
}

}  // namespace microset::procedures
