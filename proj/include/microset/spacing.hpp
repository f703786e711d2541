#pragma once

#include "microset/intervals.hpp"
#include "microset/numeral.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace microset::spacing {

// F(B) = union over n in B of {4^n, ..., 4^{n+1}-1}, ascending.
std::vector<std::int64_t> F_of(const std::set<std::int64_t>& B);

struct ScaffoldRef {
  std::int64_t level = 0;  // scaffold level i >= L
  std::int64_t index = 0;  // j < 7 * 6^{i-L}
};

struct Placement {
  std::int64_t k = 0;  // member index in F(B)
  Interval interval;   // length 13^(-(m+1)!(k+1)!)
  ScaffoldRef host;    // thin scaffold member K_i it sits in
};

// Scaffold of nested base-13 intervals: level L holds 7 members of length
// 13^(-(L+1)!) laid out on stride 2*len inside the host; level i holds
// 7*6^{i-L} members, child j sitting inside parent j mod 6^{i-L}. The thin
// members (index >= 6*6^{i-L}) never receive children and host the placed
// intervals I_k, k in F(B), flush left, in size order.
class Scheme {
 public:
  // Requires |host| >= 13 * (1/13)^((min F(B)+1)!) strictly enough that the
  // derived least level L satisfies L <= min F(B).
  Scheme(int m, Interval host, std::set<std::int64_t> B);

  int m() const { return m_; }
  const Interval& host() const { return host_; }
  const std::set<std::int64_t>& B() const { return B_; }
  std::int64_t L() const { return L_; }
  const std::vector<std::int64_t>& indices() const { return indices_; }  // F(B)

  Numeral scaffold_length(std::int64_t level) const;  // 13^(-(level+1)!)
  Interval scaffold_interval(const ScaffoldRef& ref) const;

  // i-th thin member in the size-ordered enumeration (ties by index).
  ScaffoldRef thin_member(std::int64_t i) const;

  // Placement of I_{F(B)[i]}; lazy, O(level) numeral work.
  Placement placement_at(std::size_t i) const;
  // All placements; guarded against absurd member counts.
  std::vector<Placement> placements() const;

  // Placements restricted to F({b}).
  std::vector<Placement> placements_for(std::int64_t b) const;

 private:
  int m_ = 0;
  Interval host_;
  std::set<std::int64_t> B_;
  std::int64_t L_ = 0;
  std::vector<std::int64_t> indices_;
};

}  // namespace microset::spacing
