#include "microset/rational_gdelta.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace microset::gdelta {

int cmp_power_vs_rational(int base, const BigInt& L, const BigRat& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (q <= 0) return 1;  // base^-L > 0 >= q
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  BigInt absL = L < 0 ? BigInt(-L) : L;
  if (absL <= (1 << 22)) {
    // exact: base^-L vs num/den
    BigInt p = big_pow(static_cast<unsigned>(base), absL);
    BigInt lhs = L < 0 ? den * p : den;
    BigInt rhs = L < 0 ? num : num * p;
    if (lhs == rhs) return 0;
    return lhs < rhs ? -1 : 1;
  }
  if (L < 0) return 1;  // base^|L| astronomically large, q representable
  // base^-L < num/den  <=>  den < num * base^L; base^L has >= L bits.
  auto bits = [](const BigInt& x) {
    return static_cast<std::int64_t>(boost::multiprecision::msb(x)) + 1;
  };
  if (BigInt(bits(den)) <= BigInt(bits(num)) + L - 2) return -1;
  throw std::overflow_error("cmp_power_vs_rational: indeterminate without materialization");
}

BigRat RatInterval::lo_shrunk_by(const BigInt& margin_exp) const {
  (void)margin_exp;
  return center;
}

bool rat_contains_point(const RatInterval& iv, const BigRat& p) {
  // |p - center| <= len/2
  BigRat d = p - iv.center;
  if (d < 0) d = -d;
  if (d == 0) return true;
  // len/2 = base^-(len_exp) / 2: compare d <= base^-len_exp / 2
  // i.e. 2d vs base^-len_exp
  return cmp_power_vs_rational(iv.base, iv.len_exp, 2 * d) >= 0;
}

bool rat_contains(const RatInterval& outer, const RatInterval& inner) {
  if (outer.base != inner.base) throw std::invalid_argument("rat interval base mismatch");
  // |c_i - c_o| + len_i/2 <= len_o/2
  BigRat d = inner.center - outer.center;
  if (d < 0) d = -d;
  // exact when both lengths materialize; otherwise decide by the dominant
  // power: need base^-Li <= base^-Lo - 2d, i.e. 2d <= base^-Lo - base^-Li.
  // Li >= Lo always here (rows shrink); handle both cases.
  const BigInt& Lo = outer.len_exp;
  const BigInt& Li = inner.len_exp;
  if (Li < Lo) return false;  // longer than the outer interval
  if (Li == Lo) return d == 0;
  if (d == 0) return true;
  // 2d + base^-Li <= base^-Lo ?  Bound base^-Li by one ulp: strict check
  // 2d < base^-Lo - base^-Li. Decide via 2d vs base^-Lo first.
  int c = cmp_power_vs_rational(outer.base, Lo, 2 * d);
  if (c < 0) return false;   // 2d > base^-Lo: way outside
  if (c == 0) return false;  // touching only if inner had zero length
  // 2d < base^-Lo strictly; need the slack base^-Lo - 2d >= base^-Li:
  BigRat slack = BigRat(1);
  if (Lo <= (1 << 22)) {
    slack = BigRat(1, big_pow(static_cast<unsigned>(outer.base), Lo)) - 2 * d;
  } else {
    throw std::overflow_error("rat_contains: outer length not materializable");
  }
  return cmp_power_vs_rational(inner.base, Li, slack) <= 0;
}

BigRat rational_at(std::int64_t i) {
  if (i < 0) throw std::invalid_argument("rational index negative");
  if (i == 0) return BigRat(0);
  if (i == 1) return BigRat(1);
  std::int64_t seen = 1;  // counts 0 and 1 as the first two
  for (std::int64_t den = 2;; ++den) {
    for (std::int64_t num = 1; num < den; ++num) {
      if (boost::integer::gcd(num, den) != 1) continue;
      if (++seen == i) return BigRat(num, den);
    }
    if (den > 1 << 20) throw std::overflow_error("rational enumeration too deep");
  }
}

std::optional<BigInt> exact_log(int base, std::int64_t value) {
  if (value < 1) return std::nullopt;
  BigInt t = 0;
  std::int64_t v = value;
  while (v % base == 0) {
    v /= base;
    ++t;
  }
  if (v != 1) return std::nullopt;
  return t;
}

std::vector<RatInterval> Scheme::row(int base, std::int64_t n, std::int64_t count) const {
  auto t = exact_log(base, n + 1);
  if (!t.has_value())
    throw std::invalid_argument("gdelta row: 1/(n+1) is not a base power");
  if (*t < 1) throw std::invalid_argument("gdelta row: eps must be < 1");
  std::vector<RatInterval> out;
  for (std::int64_t i = 0; i < count; ++i) {
    RatInterval iv;
    iv.center = rational_at(i);
    iv.base = base;
    iv.len_exp = *t * fam_.exponent(i);  // |P_n,i| = f_i(1/(n+1)) = base^-(t*e(i))
    out.push_back(std::move(iv));
  }
  return out;
}

}  // namespace microset::gdelta
