#pragma once

#include "microset/budgets.hpp"
#include "microset/intervals.hpp"
#include "microset/spacing.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace microset::pico {

// Interval I^step_index of the point-addition construction. Base 13
// throughout; eps = 1/13, eps_n = 13^(-(n+1)!).
struct IntervalId {
  int step = 0;
  std::int64_t index = 0;
  auto operator<=>(const IntervalId&) const = default;
};

struct Config {
  int step_horizon = 2;    // spacing steps executed: 0..step_horizon
  int n_max = 4;           // initial families 0..n_max
  std::int64_t max_b = 8;  // largest partition value assigned to a cell
};

// A populated cell: an interval subdivided at some step with its partition
// block. Finite truncation of the infinite partition; the untruncated rule
// assigns cell i of step m the residues {b : b mod P_m = r_i} for
// pairwise-coprime moduli P_m, so any two cells at different steps share
// infinitely many b (CRT). Here each cell carries the first such b.
struct Cell {
  IntervalId id;
  int spaced_at = 0;
  std::vector<std::int64_t> bs;
  std::shared_ptr<spacing::Scheme> scheme;  // built lazily at construction
};

class Scheme {
 public:
  explicit Scheme(Config cfg = {});

  const Config& config() const { return cfg_; }
  std::int64_t k_exp(int n) const;  // k_n: least k with 4^k > (n+1)!
  std::int64_t h(int n) const;      // 4^{k_n}

  bool is_initial(const IntervalId& id) const;
  Interval interval_of(const IntervalId& id) const;
  // The unique initial interval containing id (id itself when initial).
  IntervalId host_initial(const IntervalId& id) const;
  // Paper g: the step whose intervals are the direct children of id.
  int g_of(const IntervalId& id) const;

  // Structural T_m candidate list (cells eligible for spacing at step m),
  // restricted to intervals that exist within the truncation. Sorted by
  // (index, step).
  std::vector<IntervalId> t_candidates(int m) const;
  // Populated cells, in assignment order.
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell* cell_of(const IntervalId& id) const;       // cell subdividing id
  const Cell* owning_cell(const IntervalId& id) const;   // cell that created id

  // Children of id: the members its cell's spacing produces. Lazy; capped.
  std::vector<IntervalId> children_of(const IntervalId& id,
                                      std::int64_t index_cap = 1 << 20) const;

  // Stage set of step m: initials plus spaced members with index <= cap.
  std::vector<std::pair<IntervalId, Interval>> stage(int step,
                                                     std::int64_t index_cap) const;

  Numeral point_x() const { return Numeral::from_int(13, -1); }

  // Threshold: least admissible b for an interval of length 13^-E at step m,
  // i.e. least x >= k_m with (4^x+1)! >= E+2 (keeps the spacing level L
  // at or below min F(B)).
  std::int64_t admissible_b(const BigInt& length_exp, int step) const;

 private:
  void build();
  void populate_step(int m, const std::vector<IntervalId>& candidates);
  BigInt length_exp_of(const IntervalId& id) const;

  Config cfg_;
  std::vector<Cell> cells_;
  std::map<IntervalId, std::size_t> cell_by_id_;                 // id -> cells_ idx
  std::map<std::pair<int, std::int64_t>, std::size_t> cell_by_step_b_;
  mutable std::mutex mu_;
  mutable std::map<IntervalId, Interval> interval_cache_;
};

}  // namespace microset::pico
