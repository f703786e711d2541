#pragma once

#include "microset/budgets.hpp"
#include "microset/numeral.hpp"

#include <optional>
#include <vector>

namespace microset::gdelta {

// Closed interval with an exact rational center and a power length 2^-L (or
// base^-L). The length exponent stays symbolic: the deep rows of the
// construction have exponents far past anything materializable.
struct RatInterval {
  BigRat center;
  int base = 2;
  BigInt len_exp;  // length = base^(-len_exp)

  BigRat lo_shrunk_by(const BigInt& margin_exp) const;  // helpers for tests
};

// Exact comparison base^(-L) vs a positive rational q: -1, 0, +1.
int cmp_power_vs_rational(int base, const BigInt& L, const BigRat& q);

// Does inner lie inside outer? Exact, using the symbolic lengths.
bool rat_contains(const RatInterval& outer, const RatInterval& inner);
bool rat_contains_point(const RatInterval& iv, const BigRat& p);

// Canonical enumeration of Q in [0,1]: 0, 1, then ascending denominator,
// ascending numerator, reduced fractions only.
BigRat rational_at(std::int64_t i);

// The dense G-delta witness scheme: row n covers the rationals with
// intervals of radius f_i(1/(n+1))/2 centered at q_i.
class Scheme {
 public:
  explicit Scheme(PowerFamily fam) : fam_(std::move(fam)) {}

  const PowerFamily& family() const { return fam_; }

  // First `count` intervals of row n. Requires 1/(n+1) = base^-t for some
  // t >= 1 (n+1 a power of the base); throws otherwise.
  std::vector<RatInterval> row(int base, std::int64_t n, std::int64_t count) const;

 private:
  PowerFamily fam_;
};

// base^t = n+1 solver; nullopt when n+1 is not a base power.
std::optional<BigInt> exact_log(int base, std::int64_t value);

}  // namespace microset::gdelta
