#include "microset/budgets.hpp"

#include <memory>

namespace microset {

namespace {
constexpr std::int64_t kMaxNanoIndex = 1 << 22;   // 2^k exponent guard
constexpr std::int64_t kMaxPicoIndex = 200000;    // (k+1)! guard
}  // namespace

PowerFamily PowerFamily::micro() {
  return PowerFamily("micro", [](std::int64_t k) { return BigInt(k + 1); });
}

PowerFamily PowerFamily::nano() {
  return PowerFamily("nano", [](std::int64_t k) {
    if (k > kMaxNanoIndex) throw std::overflow_error("nano exponent index too large");
    return BigInt(1) << static_cast<std::size_t>(k);
  });
}

PowerFamily PowerFamily::pico() {
  return PowerFamily("pico", [](std::int64_t k) {
    if (k > kMaxPicoIndex) throw std::overflow_error("pico exponent index too large");
    return factorial(k + 1);
  });
}

PowerFamily PowerFamily::hybrid(std::int64_t k0) {
  if (k0 < 0) throw std::invalid_argument("hybrid: k0 must be >= 0");
  return PowerFamily("hybrid:" + std::to_string(k0), [k0](std::int64_t k) {
    if (k > kMaxPicoIndex) throw std::overflow_error("hybrid exponent index too large");
    return k < k0 ? factorial(k + 1) : factorial(k + 2);
  });
}

PowerFamily PowerFamily::custom(std::vector<BigInt> exps) {
  if (exps.empty()) throw std::invalid_argument("custom family needs exponents");
  BigInt prev = 0;
  for (const BigInt& e : exps) {
    if (e < 1) throw std::invalid_argument("custom family exponent < 1");
    if (e < prev) throw std::invalid_argument("custom family exponents must be nondecreasing");
    prev = e;
  }
  auto table = std::make_shared<std::vector<BigInt>>(std::move(exps));
  return PowerFamily("custom", [table](std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative budget index");
    // Last entry extends the table: keeps e nondecreasing and total.
    std::size_t i = static_cast<std::size_t>(k);
    if (i >= table->size()) i = table->size() - 1;
    return (*table)[i];
  });
}

BigInt PowerFamily::exponent(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("negative budget index");
  if (!fn_) throw std::logic_error("empty power family");
  return fn_(k);
}

Numeral budget_length(const PowerFamily& fam, std::int64_t k, const EpsilonSpec& eps) {
  return Numeral::from_power(eps.base, eps.t * fam.exponent(k));
}

PowerFamily shift_family(const PowerFamily& fam, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("shift_family: m must be >= 1");
  if (m == 1) return fam;
  PowerFamily inner = fam;
  return PowerFamily(fam.name() + "/m" + std::to_string(m),
                     [inner, m](std::int64_t k) { return inner.exponent(k / m); });
}

PartialSumResult partial_sum_check(const PowerFamily& fam, const EpsilonSpec& eps,
                                   std::int64_t K) {
  if (K < 1) throw std::invalid_argument("partial_sum_check: K must be >= 1");
  Numeral sum = Numeral::zero(eps.base);
  for (std::int64_t k = 0; k < K; ++k) sum = add(sum, budget_length(fam, k, eps));
  PartialSumResult r{sum, false};
  r.below_one = lt(sum, Numeral::from_power(eps.base, 0));
  return r;
}

void BudgetList::validate() const {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (banned.count(i)) continue;
    if (lengths[i].sign() <= 0)
      throw std::invalid_argument("budget lengths must be positive");
  }
  for (std::size_t i : banned)
    if (i >= lengths.size())
      throw std::invalid_argument("banned index out of range");
}

BudgetList BudgetList::from_family(const PowerFamily& fam, const EpsilonSpec& eps,
                                   std::int64_t count) {
  BudgetList b;
  for (std::int64_t k = 0; k < count; ++k)
    b.lengths.push_back(budget_length(fam, k, eps));
  return b;
}

}  // namespace microset
