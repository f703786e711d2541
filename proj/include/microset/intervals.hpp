#pragma once

#include "microset/numeral.hpp"

#include <optional>
#include <vector>

namespace microset {

// Closed interval [lo, hi] with exact endpoints, lo <= hi. Degenerate point
// intervals are legal but flagged by the holders that allow them.
struct Interval {
  Numeral lo;
  Numeral hi;

  Interval() = default;
  Interval(Numeral l, Numeral h);

  Numeral length() const { return sub(hi, lo); }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

bool intersects(const Interval& a, const Interval& b);
bool contains(const Interval& outer, const Interval& inner);
bool contains_point(const Interval& iv, const Numeral& p);
// Distance between two disjoint closed intervals (0 if they touch/overlap).
Numeral distance(const Interval& a, const Interval& b);

// Normalized finite union of closed intervals: sorted by lo, pairwise
// disjoint, strictly separated (touching intervals merge).
class IntervalSet {
 public:
  IntervalSet() = default;
  const std::vector<Interval>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  std::size_t size() const { return comps_.size(); }

  friend IntervalSet normalize_union(std::vector<Interval> raw);

 private:
  std::vector<Interval> comps_;
};

// Canonical merged form; value-equal inputs give identical output.
IntervalSet normalize_union(std::vector<Interval> raw);
IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);

// Minimum distance between consecutive components; nullopt if < 2 components.
std::optional<Numeral> min_gap(const IntervalSet& s);

// Exact max number of components a single closed interval of length `len`
// can intersect, over all placements. len >= 0.
int max_hit_count(const IntervalSet& s, const Numeral& len);

// Exact total length.
Numeral measure(const IntervalSet& s);

// True iff every point of `inner` lies in some component of `outer`.
bool covers(const IntervalSet& outer, const IntervalSet& inner);

}  // namespace microset
