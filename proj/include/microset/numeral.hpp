#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace microset {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// base^exp for exp >= 0. Throws if the result would exceed the materialization
// guard (~2^26 bits); callers that may hit the guard catch and fall back to
// exponent-level reasoning.
BigInt big_pow(unsigned base, const BigInt& exp);

// n! with a process-wide cache. Guarded against absurd n.
const BigInt& factorial(std::int64_t n);

// A maximal block of equal digits: `digit` repeated at every exponent
// position lo..hi (inclusive). Position e carries weight base^(-e), so
// smaller exponents are more significant. lo <= hi always.
struct Run {
  BigInt lo;
  BigInt hi;
  int digit = 0;

  bool operator==(const Run& o) const {
    return lo == o.lo && hi == o.hi && digit == o.digit;
  }
};

// Exact value sign * sum over runs of digit * base^(-e), run-length encoded.
// Canonical form: digits in [1, base-1], runs sorted by lo, pairwise disjoint,
// and no two adjacent runs (hi+1 == next.lo) share a digit. sign == 0 iff no
// runs. Exponents may be negative, so values >= 1 are representable.
class Numeral {
 public:
  Numeral() = default;
  explicit Numeral(int base) : base_(check_base(base)) {}

  static Numeral zero(int base) { return Numeral(base); }
  // base^(-exp), any BigInt exp.
  static Numeral from_power(int base, const BigInt& exp);
  static Numeral from_int(int base, std::int64_t value);
  // Canonicalizes (sorts, merges, strips zero digits). sign may be any int,
  // only its sign matters; zero runs force sign 0.
  static Numeral from_runs(int base, int sign, std::vector<Run> runs);

  int base() const { return base_; }
  int sign() const { return sign_; }
  const std::vector<Run>& runs() const { return runs_; }
  bool is_zero() const { return sign_ == 0; }

  Numeral negated() const;
  Numeral abs() const;

  // value * base^(-shift): adds `shift` to every exponent.
  Numeral shifted(const BigInt& shift) const;
  // n * value for n >= 0 (BigInt multipliers use the base-digit / set-bit
  // decomposition so sparse huge multipliers stay cheap).
  Numeral scaled(const BigInt& n) const;

  // Smallest exponent position carrying a nonzero digit (most significant).
  // Only valid on nonzero values.
  const BigInt& leading_exp() const;

  // Exact conversion; throws if the positional span exceeds max_span.
  BigRat to_rational(std::int64_t max_span = 200000) const;

  // Approximate display, always tagged with a leading '~' and the run count.
  // Never used for equality decisions.
  std::string approx_decimal(int significant = 6) const;
  std::string debug_string() const;

  bool canonical() const;  // invariant check, used by tests

  bool operator==(const Numeral& o) const {
    return base_ == o.base_ && sign_ == o.sign_ && runs_ == o.runs_;
  }

 private:
  static int check_base(int base) {
    if (base < 2) throw std::invalid_argument("numeral base must be >= 2");
    return base;
  }

  int base_ = 2;
  int sign_ = 0;              // -1, 0, +1
  std::vector<Run> runs_;     // canonical
};

// Exact signed arithmetic. Operands must share a base.
Numeral add(const Numeral& a, const Numeral& b);
Numeral sub(const Numeral& a, const Numeral& b);
// Total order consistent with the real values: -1, 0, +1.
int compare(const Numeral& a, const Numeral& b);

inline bool lt(const Numeral& a, const Numeral& b) { return compare(a, b) < 0; }
inline bool le(const Numeral& a, const Numeral& b) { return compare(a, b) <= 0; }
inline bool eq(const Numeral& a, const Numeral& b) { return compare(a, b) == 0; }

inline Numeral min(const Numeral& a, const Numeral& b) { return le(a, b) ? a : b; }
inline Numeral max(const Numeral& a, const Numeral& b) { return le(a, b) ? b : a; }

}  // namespace microset
