#pragma once

#include "microset/budgets.hpp"
#include "microset/intervals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace microset {

// Finite cover-feasibility instance: can `target` be covered by closed
// intervals whose lengths obey the per-index budget bounds?
struct CoverProblem {
  IntervalSet target;
  BudgetList budgets;
};

struct PlacedBudget {
  std::size_t index = 0;
  Interval interval;
};

struct InfeasibilityCertificate {
  // "subset-dp-exhaustion": the exact DP explored every subset.
  // "counting": sum over budgets of max_hit_count < component count.
  // "measure": total budget length < target measure.
  std::string kind;
  std::vector<int> hit_counts;   // counting
  Numeral lhs;                   // counting: total hits (as int in hit sum) / measure: sum of lengths
  Numeral rhs;                   // measure: target measure
  int total_hits = 0;
  int component_count = 0;
};

struct CoverVerdict {
  bool feasible = false;
  std::vector<PlacedBudget> placement;           // when feasible
  std::optional<InfeasibilityCertificate> certificate;  // when infeasible
};

// Exact decision by subset DP over budget indices with left-normalized
// placement. Throws when the budget count exceeds `budget_limit`.
CoverVerdict solve_feasible(const CoverProblem& p, std::size_t budget_limit = 22);

// Longest-budget-first heuristic; sound for feasibility (its placement is a
// real cover) but may miss feasible instances.
CoverVerdict greedy_cover(const CoverProblem& p);

// Counting / measure infeasibility certificates, or nullopt.
std::optional<InfeasibilityCertificate> counting_certificate(const CoverProblem& p);

// Independent validator: every placed length within its budget, banned
// indices unused, indices distinct, union of placements covers the target.
bool validate_cover(const IntervalSet& target, const BudgetList& budgets,
                    const std::vector<PlacedBudget>& placement,
                    std::string* why = nullptr);

}  // namespace microset
