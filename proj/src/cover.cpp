#include "microset/cover.hpp"

#include <algorithm>
#include <numeric>

namespace microset {

namespace {

// Coverage frontier: target up to and including `pos` is covered. `none`
// means nothing has been placed yet.
struct Frontier {
  bool any = false;
  Numeral pos;
};

// Index of the first component not fully covered by (-inf, f], or size() if
// the whole target is covered.
std::size_t first_open(const IntervalSet& target, const Frontier& f) {
  const auto& c = target.components();
  if (!f.any) return c.empty() ? 0 : 0;
  std::size_t lo = 0, hi = c.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (compare(c[mid].hi, f.pos) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

bool complete(const IntervalSet& target, const Frontier& f) {
  return first_open(target, f) == target.size();
}

// Left-normalized step: place one budget of length `len` starting at the
// leftmost uncovered target point. Any feasible cover can be shifted into
// this form, so iterating steps is exact.
Frontier step(const IntervalSet& target, const Frontier& f, const Numeral& len,
              Interval* placed = nullptr) {
  std::size_t i = first_open(target, f);
  const auto& c = target.components();
  if (i == c.size()) {
    if (placed) *placed = Interval(len, len);  // unused
    return f;
  }
  Numeral u = (!f.any || lt(f.pos, c[i].lo)) ? c[i].lo : f.pos;
  Frontier out;
  out.any = true;
  out.pos = add(u, len);
  if (placed) *placed = Interval(u, add(u, len));
  return out;
}

bool frontier_le(const Frontier& a, const Frontier& b) {
  if (!a.any) return true;
  if (!b.any) return false;
  return le(a.pos, b.pos);
}

}  // namespace

CoverVerdict solve_feasible(const CoverProblem& p, std::size_t budget_limit) {
  p.budgets.validate();
  const std::size_t n = p.budgets.lengths.size();
  if (n > budget_limit)
    throw std::invalid_argument("solve_feasible: budget count exceeds limit");

  CoverVerdict verdict;
  if (p.target.empty()) {
    verdict.feasible = true;
    return verdict;
  }

  const std::size_t nmask = std::size_t{1} << n;
  std::vector<Frontier> best(nmask);
  std::vector<std::uint32_t> reached(nmask, 0);
  std::vector<std::pair<std::uint32_t, int>> pred(nmask, {0, -1});
  reached[0] = 1;

  std::uint32_t goal_mask = 0;
  bool found = false;
  for (std::uint32_t mask = 0; mask < nmask && !found; ++mask) {
    if (!reached[mask]) continue;
    if (complete(p.target, best[mask])) {
      goal_mask = mask;
      found = true;
      break;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (mask & (1u << b)) continue;
      if (p.budgets.banned.count(b)) continue;
      std::uint32_t next = mask | (1u << b);
      Frontier f = step(p.target, best[mask], p.budgets.lengths[b]);
      if (!reached[next]) {
        best[next] = f;
        pred[next] = {mask, static_cast<int>(b)};
        reached[next] = 1;
      } else if (!frontier_le(f, best[next])) {
        best[next] = f;
        pred[next] = {mask, static_cast<int>(b)};
      }
    }
  }
  if (!found) {
    // Check the full masks too (loop above only tests masks before expanding).
    for (std::uint32_t mask = 0; mask < nmask; ++mask) {
      if (reached[mask] && complete(p.target, best[mask])) {
        goal_mask = mask;
        found = true;
        break;
      }
    }
  }

  if (!found) {
    verdict.feasible = false;
    InfeasibilityCertificate cert;
    cert.kind = "subset-dp-exhaustion";
    verdict.certificate = cert;
    return verdict;
  }

  // Reconstruct the placement by replaying the predecessor chain.
  std::vector<int> order;
  std::uint32_t m = goal_mask;
  while (m != 0) {
    order.push_back(pred[m].second);
    m = pred[m].first;
  }
  std::reverse(order.begin(), order.end());
  Frontier f;
  for (int b : order) {
    Interval placed;
    f = step(p.target, f, p.budgets.lengths[static_cast<std::size_t>(b)], &placed);
    verdict.placement.push_back(PlacedBudget{static_cast<std::size_t>(b), placed});
  }
  verdict.feasible = true;
  return verdict;
}

CoverVerdict greedy_cover(const CoverProblem& p) {
  p.budgets.validate();
  CoverVerdict verdict;
  if (p.target.empty()) {
    verdict.feasible = true;
    return verdict;
  }
  std::vector<std::size_t> avail;
  for (std::size_t i = 0; i < p.budgets.lengths.size(); ++i)
    if (!p.budgets.banned.count(i)) avail.push_back(i);
  // longest first, ties by smaller index
  std::stable_sort(avail.begin(), avail.end(), [&](std::size_t a, std::size_t b) {
    return compare(p.budgets.lengths[a], p.budgets.lengths[b]) > 0;
  });

  Frontier f;
  for (std::size_t i : avail) {
    if (complete(p.target, f)) break;
    Interval placed;
    f = step(p.target, f, p.budgets.lengths[i], &placed);
    verdict.placement.push_back(PlacedBudget{i, placed});
  }
  verdict.feasible = complete(p.target, f);
  if (!verdict.feasible) {
    InfeasibilityCertificate cert;
    cert.kind = "greedy-exhaustion";
    verdict.certificate = cert;
  }
  return verdict;
}

std::optional<InfeasibilityCertificate> counting_certificate(const CoverProblem& p) {
  p.budgets.validate();
  if (p.target.empty()) return std::nullopt;
  int comps = static_cast<int>(p.target.size());
  InfeasibilityCertificate cert;
  cert.component_count = comps;

  int total = 0;
  for (std::size_t i = 0; i < p.budgets.lengths.size(); ++i) {
    if (p.budgets.banned.count(i)) continue;
    int h = max_hit_count(p.target, p.budgets.lengths[i]);
    cert.hit_counts.push_back(h);
    total += h;
  }
  cert.total_hits = total;
  if (total < comps) {
    cert.kind = "counting";
    return cert;
  }

  int base = p.target.components()[0].lo.base();
  Numeral sum = Numeral::zero(base);
  for (std::size_t i = 0; i < p.budgets.lengths.size(); ++i) {
    if (p.budgets.banned.count(i)) continue;
    sum = add(sum, p.budgets.lengths[i]);
  }
  Numeral meas = measure(p.target);
  if (lt(sum, meas)) {
    cert.kind = "measure";
    cert.lhs = sum;
    cert.rhs = meas;
    return cert;
  }
  return std::nullopt;
}

bool validate_cover(const IntervalSet& target, const BudgetList& budgets,
                    const std::vector<PlacedBudget>& placement, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::set<std::size_t> seen;
  std::vector<Interval> pieces;
  for (const PlacedBudget& pb : placement) {
    if (pb.index >= budgets.lengths.size()) return fail("placement index out of range");
    if (budgets.banned.count(pb.index)) return fail("banned index used");
    if (!seen.insert(pb.index).second) return fail("duplicate budget index");
    if (compare(pb.interval.length(), budgets.lengths[pb.index]) > 0)
      return fail("placed interval exceeds its budget");
    pieces.push_back(pb.interval);
  }
  if (!covers(normalize_union(std::move(pieces)), target))
    return fail("union of placements does not cover target");
  return true;
}

}  // namespace microset
