#pragma once

#include "microset/budgets.hpp"
#include "microset/cover.hpp"
#include "microset/intervals.hpp"
#include "microset/nano.hpp"
#include "microset/rational_gdelta.hpp"

#include <memory>
#include <string>
#include <vector>

namespace microset::procedures {

// Entry of a family-budgeted labeled cover: |interval| <= f_index(eps).
struct LabeledEntry {
  std::int64_t index = 0;
  Interval interval;
};

// Universal validator: per-index budget bounds, distinct indices, union
// covers the target. Every cover any procedure emits must pass it.
bool validate_family_cover(const IntervalSet& target, const PowerFamily& fam,
                           const EpsilonSpec& eps,
                           const std::vector<LabeledEntry>& entries,
                           std::string* why = nullptr);

// A compact set presented at finite stage, able to produce valid family
// covers of itself at any requested epsilon within its horizon. Covers are
// pairwise disjoint, sorted, and nested downward across stages.
class CoverSource {
 public:
  virtual ~CoverSource() = default;
  virtual int base() const = 0;
  virtual int max_depth() const = 0;
  virtual IntervalSet stage_set(int depth) const = 0;
  // Finite labeled cover of the source set, |entry_i| <= f_i(eps), entries
  // pairwise disjoint and position-sorted. Throws past the stage horizon.
  virtual std::vector<LabeledEntry> family_cover(const PowerFamily& fam,
                                                 const EpsilonSpec& eps) const = 0;
};

std::unique_ptr<CoverSource> make_point_source(std::vector<Numeral> points);
// The 2-nanoscopic scheme as a compact source for the 2-shifted nano family.
std::unique_ptr<CoverSource> make_nano_scheme_source(int max_stage);

struct ShiftResult {
  std::vector<LabeledEntry> entries;  // all indices > k
  EpsilonSpec eps_prime;
  EpsilonSpec eps_second;
  int bins = 0;
  int items = 0;
  int top_k_occupancy = 0;      // members inside the chosen bins
  int effective_k = 0;          // restart may raise k
  bool pigeonhole_applicable = false;  // items >= bins + k
};

// Cover of the source by budgets (f_n(eps))_{n > k}: the compact-cover
// transformation. Exact arithmetic throughout; postcondition checked by the
// universal validator in tests.
ShiftResult compact_shift(const CoverSource& src, const PowerFamily& fam,
                          std::int64_t k, const EpsilonSpec& eps);

struct SigmaUnionResult {
  std::vector<ShiftResult> per_source;
  std::vector<LabeledEntry> joint;  // strictly increasing disjoint index blocks
};

SigmaUnionResult sigma_union_cover(const std::vector<const CoverSource*>& srcs,
                                   const PowerFamily& fam, const EpsilonSpec& eps);

struct DecompositionResult {
  std::int64_t m = 0;
  std::vector<std::int64_t> cuts;  // l_0 < l_1 < ... < l_{depth+1}
  // block n covers the stage with flat indices in [m*l_n, m*l_{n+1}) at
  // eps_n = base^-(n+1)
  std::vector<std::vector<LabeledEntry>> blocks;
  std::vector<IntervalSet> part_stages;  // A_0 .. A_{m-1}
  // part_covers[j][n]: cover of part j at eps_n with plain family budgets,
  // J_t = block entry at flat index m*(t + l_n) + j
  std::vector<std::vector<std::vector<LabeledEntry>>> part_covers;
};

DecompositionResult decompose_m(const CoverSource& src, const PowerFamily& fam,
                                std::int64_t m, int depth);

struct NullCoverInput {
  // rows[m][n] = |I^m_n|, positive, nonincreasing along each row, with
  // sum_n rows[m][n] < 2^-(m+1)
  std::vector<std::vector<Numeral>> rows;
};

NullCoverInput parametric_null_input(int rows, int cols);  // |I^m_n| = 2^-((m+3)+n)

struct NullToFamilyResult {
  std::vector<std::vector<Numeral>> a;  // a[m][n] over the requested window
  // the four bulleted properties, finite-horizon forms, all exact
  bool row_sum_bounded = true;   // sum_j a[m][j] <= 2^-m
  bool vanishing = true;         // a[j][n] < 2^-(j+1)
  bool monotone_in_m = true;     // a[m+1][n] <= a[m][n]
  bool dominates_input = true;   // |I^m_n| <= a[m][n]
  bool chain_in_n = true;        // a[m][n+1] <= a[m][n]
};

// a_{m,n} = max over j >= m of |I^j_n|, computed with the certified stopping
// rule (rows beyond j are bounded by 2^-(j+1)); throws if the rule never
// triggers inside the table.
NullToFamilyResult null_to_family(const NullCoverInput& inp, int m_count, int n_count);

struct MergePlan {
  int case_tag = 0;
  std::vector<std::int64_t> reserved;         // case 1: s_0 < s_1 < ...
  std::vector<LabeledEntry> cover;            // case 1 output (numeral lane)
  // case 2 output (rational lane), entry i bounded by eps^{2^i}
  std::vector<gdelta::RatInterval> rat_cover;
  std::vector<std::string> notes;
};

// Case 1: reserve indices s_n for the strong-measure-zero points, cover the
// compact pieces between reservations via compact_shift.
MergePlan smz_merge_case1(const std::vector<const CoverSource*>& pieces,
                          const std::vector<Numeral>& points, const PowerFamily& fam,
                          const EpsilonSpec& eps);

// Case 2: a nested presentation row m inside row n: K_0 = I^n_k swallows the
// T-indexed tail of row m, freeing those slots for the points.
struct Case2Input {
  // rows[i] = the cover (I^{level}_j)_j of the G-presentation at
  // level = first_level + i, lengths 2^-(2^{level+j}), tracked symbolically
  std::vector<std::vector<gdelta::RatInterval>> rows;
  int first_level = 1;
  int n = 0;          // row index of the swallowing level
  std::int64_t k = 0; // K_0 = rows[n][k]
  int m = 0;          // row index of the swallowed level, m > n
};

MergePlan smz_merge_case2(const Case2Input& in, const std::vector<BigRat>& points,
                          const EpsilonSpec& eps);

// Exact check that a case-2 plan obeys the nano budgets at eps and covers
// the declared structure; used by tests and the demo.
bool validate_case2(const Case2Input& in, const std::vector<BigRat>& points,
                    const EpsilonSpec& eps, const MergePlan& plan, std::string* why = nullptr);

}  // namespace microset::procedures
