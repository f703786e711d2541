#pragma once

#include "microset/cover.hpp"
#include "microset/nano.hpp"
#include "microset/pico.hpp"
#include "microset/procedures.hpp"
#include "microset/spacing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace microset::witnesses {

// ---------- nano adversary ----------

struct NanoChainStep {
  BigInt index;
  std::optional<Interval> interval;  // materialized while threats were live
  BigInt bound;                      // budgets with index < bound are excluded
  std::vector<std::size_t> threats_checked;
  std::int64_t survivor_count_floor = 0;  // certified lower bound at this step
};

struct NanoChain {
  std::string status;  // "defeated" | "inconclusive"
  std::vector<NanoChainStep> steps;
  std::size_t budget_count = 0;
};

// Nested chain certifying a point of the scheme missed by the placed
// budgets. Preconditions: every |J_k| < (1/4)^{2^k} strictly; throws on
// violations. Never reports success it cannot verify.
NanoChain nano_witness_chain(const nano::Scheme& sch,
                             const std::vector<PlacedBudget>& placed, int depth);

// Independent re-verification: nesting, per-step disjointness from the
// stated budget prefix, strictly increasing bounds.
bool verify_nano_chain(const nano::Scheme& sch, const std::vector<PlacedBudget>& placed,
                       const NanoChain& chain, std::string* why = nullptr);

// ---------- pico adversary ----------

struct PicoChainStep {
  pico::IntervalId id;
  Interval interval;
  std::int64_t bound = 0;  // budgets with index <= bound are excluded
  // counting logs for the step's partition block, when materializable
  std::int64_t half_count = -1;       // budgets indexed in F({b}) meeting the node
  std::int64_t third_count = -1;      // members hit by window-range budgets
  std::int64_t member_count = -1;     // |F({b})|
};

struct PicoChain {
  std::string status;  // "defeated" | "inconclusive"
  std::vector<PicoChainStep> steps;
  std::int64_t banned_index = -1;
  std::size_t budget_count = 0;
};

// Adversary for the point-addition construction: budgets J_k with
// |J_k| <= (1/13)^{(k+1)!}, index N withheld. Descends to an interval
// disjoint from the whole placed list or reports inconclusive.
PicoChain pico_witness_chain(const pico::Scheme& sch, std::int64_t banned_index,
                             const std::vector<PlacedBudget>& placed, int max_depth);

bool verify_pico_chain(const pico::Scheme& sch, const std::vector<PlacedBudget>& placed,
                       const PicoChain& chain, std::string* why = nullptr);

// ---------- spacing condition checks ----------

struct SpacingReport {
  bool lengths_ok = false;        // condition (i), exact
  bool distances_ok = false;      // condition (ii), exact
  std::vector<std::int64_t> per_window_hits;  // max_hit_count per window
  std::int64_t hit_total = 0;     // condition (iii) accounting
  std::int64_t member_count = 0;
  bool third_strict = false;      // hit_total < |F({b})|/3
  bool third_nonstrict = false;   // hit_total <= |F({b})|/3 (the lemma's claim)
  std::int64_t b = 0;
};

// Conditions (i)-(iii) for one scheme and one b in B. (i) and (ii) are exact
// equalities/inequalities; (iii) sums the exact sliding-window hit counts.
SpacingReport spacing_condition_check(const spacing::Scheme& sch, std::int64_t b);

// ---------- demos ----------

struct DefeatRecord {
  std::string generator;  // "greedy" | "solver" | "random"
  std::uint64_t seed = 0;
  bool defeated = false;
  int chain_depth = 0;
};

struct NanoDemoReport {
  std::vector<std::string> part_certificates;  // validated part covers per eps
  bool parts_valid = true;
  std::vector<DefeatRecord> defeats;
  bool all_defeated = true;
};

// Finite-stage reproduction of "nanoscopic sets are not an ideal": split the
// stage-1 scheme into two parts with validated nano covers, then defeat
// candidate covers of the whole stage.
NanoDemoReport nano_non_ideal_demo(const std::vector<EpsilonSpec>& eps_list,
                                   int trials, std::uint64_t seed);

struct PicoDemoReport {
  std::vector<std::string> stage_certificates;
  bool stages_valid = true;
  std::vector<DefeatRecord> defeats;
  bool all_defeated = true;
  bool control_cover_valid = false;  // unbanned cover reaching x = -1
  bool control_covers_x = false;
  bool banned_covers_miss_x = true;
};

PicoDemoReport pico_point_demo(std::int64_t banned_index, int trials, std::uint64_t seed);

// Candidate adversarial covers for the nano scheme stages: greedy, solver,
// and seeded random placements, all strictly below the (1/4)^{2^k} bounds.
std::vector<PlacedBudget> nano_candidate_cover(const std::string& generator,
                                               std::uint64_t seed, int stage_depth,
                                               std::size_t budget_count);

// Seeded candidate cover of the pico stage with one index withheld.
std::vector<PlacedBudget> pico_candidate_cover(const pico::Scheme& sch,
                                               std::int64_t banned_index,
                                               std::uint64_t seed,
                                               std::size_t budget_count);

// The unbanned control cover of a finite pico stage plus the point x = -1.
struct PicoControl {
  IntervalSet target;
  std::vector<PlacedBudget> cover;
};
PicoControl pico_control_cover(const pico::Scheme& sch);

}  // namespace microset::witnesses
