#include "microset/intervals.hpp"

#include <algorithm>

namespace microset {

Interval::Interval(Numeral l, Numeral h) : lo(std::move(l)), hi(std::move(h)) {
  if (compare(lo, hi) > 0) throw std::invalid_argument("interval with lo > hi");
}

bool intersects(const Interval& a, const Interval& b) {
  return le(a.lo, b.hi) && le(b.lo, a.hi);
}

bool contains(const Interval& outer, const Interval& inner) {
  return le(outer.lo, inner.lo) && le(inner.hi, outer.hi);
}

bool contains_point(const Interval& iv, const Numeral& p) {
  return le(iv.lo, p) && le(p, iv.hi);
}

Numeral distance(const Interval& a, const Interval& b) {
  if (intersects(a, b)) return Numeral::zero(a.lo.base());
  if (lt(a.hi, b.lo)) return sub(b.lo, a.hi);
  return sub(a.lo, b.hi);
}

IntervalSet normalize_union(std::vector<Interval> raw) {
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i].lo.base() != raw[0].lo.base())
      throw std::invalid_argument("normalize_union: numeral base mismatch");
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    int c = compare(a.lo, b.lo);
    if (c != 0) return c < 0;
    return compare(a.hi, b.hi) < 0;
  });
  IntervalSet out;
  for (Interval& iv : raw) {
    if (!out.comps_.empty() && le(iv.lo, out.comps_.back().hi)) {
      if (lt(out.comps_.back().hi, iv.hi)) out.comps_.back().hi = iv.hi;
    } else {
      out.comps_.push_back(std::move(iv));
    }
  }
  return out;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.components();
  all.insert(all.end(), b.components().begin(), b.components().end());
  return normalize_union(std::move(all));
}

std::optional<Numeral> min_gap(const IntervalSet& s) {
  const auto& c = s.components();
  if (c.size() < 2) return std::nullopt;
  Numeral best = sub(c[1].lo, c[0].hi);
  for (std::size_t i = 2; i < c.size(); ++i) {
    Numeral g = sub(c[i].lo, c[i - 1].hi);
    if (lt(g, best)) best = g;
  }
  return best;
}

int max_hit_count(const IntervalSet& s, const Numeral& len) {
  if (len.sign() < 0) throw std::invalid_argument("max_hit_count: negative length");
  const auto& c = s.components();
  if (c.empty()) return 0;
  // A window [x, x+len] meets component j iff x in [lo_j - len, hi_j].
  // Some optimum occurs at a left event x = lo_i - len, i.e. the window ends
  // flush at lo_i. Count pairs exactly; components are few in practice.
  int best = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Numeral x = sub(c[i].lo, len);
    int count = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (le(c[j].lo, x)) {
        if (le(x, c[j].hi)) ++count;
      } else if (le(c[j].lo, add(x, len))) {
        ++count;
      }
    }
    best = std::max(best, count);
  }
  return best;
}

Numeral measure(const IntervalSet& s) {
  if (s.empty()) return Numeral::zero(2);
  Numeral total = Numeral::zero(s.components()[0].lo.base());
  for (const Interval& iv : s.components()) total = add(total, iv.length());
  return total;
}

bool covers(const IntervalSet& outer, const IntervalSet& inner) {
  // Both normalized: every inner component must sit inside one outer component.
  std::size_t oi = 0;
  for (const Interval& iv : inner.components()) {
    while (oi < outer.size() && lt(outer.components()[oi].hi, iv.lo)) ++oi;
    if (oi == outer.size()) return false;
    if (!contains(outer.components()[oi], iv)) return false;
  }
  return true;
}

}  // namespace microset
