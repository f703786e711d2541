#pragma once

#include "microset/intervals.hpp"
#include "microset/numeral.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace microset {

// epsilon = base^(-t), t >= 1, so epsilon in (0,1).
struct EpsilonSpec {
  int base = 2;
  BigInt t = 1;

  EpsilonSpec() = default;
  EpsilonSpec(int b, BigInt tt) : base(b), t(std::move(tt)) {
    if (t < 1) throw std::invalid_argument("epsilon exponent must be >= 1");
  }
  Numeral value() const { return Numeral::from_power(base, t); }
};

// Budget family f_k(eps) = eps^{e(k)} with integer exponent function e,
// e nondecreasing and e(k) >= 1.
class PowerFamily {
 public:
  using ExpFn = std::function<BigInt(std::int64_t)>;

  PowerFamily() = default;
  PowerFamily(std::string name, ExpFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static PowerFamily micro();            // e(k) = k+1
  static PowerFamily nano();             // e(k) = 2^k
  static PowerFamily pico();             // e(k) = (k+1)!
  static PowerFamily hybrid(std::int64_t k0);  // (k+1)! below k0, (k+2)! from k0
  static PowerFamily custom(std::vector<BigInt> exps);  // explicit table

  const std::string& name() const { return name_; }
  BigInt exponent(std::int64_t k) const;

  std::optional<std::int64_t> convergence_horizon;

 private:
  std::string name_;
  ExpFn fn_;
};

// Exact f_k(eps) = base^(-t*e(k)).
Numeral budget_length(const PowerFamily& fam, std::int64_t k, const EpsilonSpec& eps);

// m-shifted family: e'(m*k + r) = e(k) for 0 <= r < m.
PowerFamily shift_family(const PowerFamily& fam, std::int64_t m);

struct PartialSumResult {
  Numeral sum;
  bool below_one = false;
};

// Exact sum of the first K budgets plus the verdict sum < 1.
PartialSumResult partial_sum_check(const PowerFamily& fam, const EpsilonSpec& eps,
                                   std::int64_t K);

// Finite list of prescribed lengths; banned indices carry no interval at all.
struct BudgetList {
  std::vector<Numeral> lengths;
  std::set<std::size_t> banned;

  void validate() const;
  static BudgetList from_family(const PowerFamily& fam, const EpsilonSpec& eps,
                                std::int64_t count);
};

}  // namespace microset
