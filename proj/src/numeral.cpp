#include "microset/numeral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <sstream>

namespace microset {

namespace {

constexpr std::int64_t kMaxPowBits = std::int64_t{1} << 26;  // ~8 MiB values
constexpr std::int64_t kMaxFactorialArg = 1 << 20;

double log2_of(unsigned base) {
  static const double table[17] = {0, 0, 1.0,      1.584963, 2.0,      2.321928,
                                   2.584963, 2.807355, 3.0, 3.169925, 3.321928,
                                   3.459432, 3.584963, 3.700440, 3.807355,
                                   3.906891, 4.0};
  if (base <= 16) return table[base];
  return 4.1;
}

}  // namespace

BigInt big_pow(unsigned base, const BigInt& exp) {
  if (exp < 0) throw std::invalid_argument("big_pow: negative exponent");
  BigInt bits = exp * BigInt(static_cast<std::int64_t>(log2_of(base) * 1024) + 1) / 1024;
  if (bits > kMaxPowBits)
    throw std::overflow_error("big_pow: exponent too large to materialize");
  if (base == 2) return BigInt(1) << static_cast<std::size_t>(exp);
  BigInt result = 1;
  BigInt b = base;
  BigInt e = exp;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

const BigInt& factorial(std::int64_t n) {
  if (n < 0 || n > kMaxFactorialArg)
    throw std::invalid_argument("factorial: argument out of range");
  static std::vector<BigInt> cache{1, 1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<std::int64_t>(cache.size()) <= n)
    cache.push_back(cache.back() * BigInt(cache.size()));
  return cache[static_cast<std::size_t>(n)];
}

namespace {

// One maximal stretch of positions where both operands have constant digits.
struct Segment {
  BigInt lo, hi;
  int da = 0, db = 0;
};

// Splits the joint span of two canonical run lists into segments of constant
// digit pairs, including the implicit zero-digit gaps between runs. Linear in
// the total run count.
std::vector<Segment> segmentize(const std::vector<Run>& a, const std::vector<Run>& b) {
  std::vector<BigInt> events;
  events.reserve(2 * (a.size() + b.size()));
  for (const Run& r : a) {
    events.push_back(r.lo);
    events.push_back(r.hi + 1);
  }
  for (const Run& r : b) {
    events.push_back(r.lo);
    events.push_back(r.hi + 1);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  std::vector<Segment> segs;
  segs.reserve(events.size());
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    Segment s;
    s.lo = events[i];
    s.hi = events[i + 1] - 1;
    while (ia < a.size() && a[ia].hi < s.lo) ++ia;
    if (ia < a.size() && a[ia].lo <= s.lo) s.da = a[ia].digit;
    while (ib < b.size() && b[ib].hi < s.lo) ++ib;
    if (ib < b.size() && b[ib].lo <= s.lo) s.db = b[ib].digit;
    segs.push_back(std::move(s));
  }
  return segs;
}

void push_piece(std::vector<Run>& out, const BigInt& lo, const BigInt& hi, int digit) {
  if (digit == 0) return;
  if (!out.empty() && out.back().lo == hi + 1 && out.back().digit == digit) {
    out.back().lo = lo;  // building in reverse, extend toward smaller exponents
    return;
  }
  out.push_back(Run{lo, hi, digit});
}

// Magnitude addition over canonical run lists; carries resolved segment-wise.
// The carry map c -> (v+c)/base is idempotent on its own image, so each
// segment contributes at most two runs regardless of its width.
std::vector<Run> add_mag(const std::vector<Run>& a, const std::vector<Run>& b, int base) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Segment> segs = segmentize(a, b);
  std::vector<Run> rev;  // pieces in decreasing-significance -> reversed later
  int carry = 0;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    int v = it->da + it->db;
    int last = (v + carry) % base;
    int c1 = (v + carry) / base;
    if (it->lo == it->hi) {
      push_piece(rev, it->lo, it->hi, last);
    } else {
      push_piece(rev, it->hi, it->hi, last);
      push_piece(rev, it->lo, it->hi - 1, (v + c1) % base);
    }
    carry = c1;
  }
  if (carry != 0) push_piece(rev, segs.front().lo - 1, segs.front().lo - 1, carry);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// Magnitude subtraction, requires value(a) >= value(b).
std::vector<Run> sub_mag(const std::vector<Run>& a, const std::vector<Run>& b, int base) {
  if (b.empty()) return a;
  std::vector<Segment> segs = segmentize(a, b);
  std::vector<Run> rev;
  int borrow = 0;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    int v = it->da - it->db;
    int raw = v - borrow;
    int last = raw < 0 ? raw + base : raw;
    int b1 = raw < 0 ? 1 : 0;
    if (it->lo == it->hi) {
      push_piece(rev, it->lo, it->hi, last);
    } else {
      int raw2 = v - b1;
      push_piece(rev, it->hi, it->hi, last);
      push_piece(rev, it->lo, it->hi - 1, raw2 < 0 ? raw2 + base : raw2);
    }
    borrow = b1;
  }
  if (borrow != 0) throw std::logic_error("sub_mag: magnitude underflow");
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// -1 / 0 / +1 comparing magnitudes.
int cmp_mag(const std::vector<Run>& a, const std::vector<Run>& b) {
  if (a.empty() && b.empty()) return 0;
  if (a.empty()) return -1;
  if (b.empty()) return 1;
  std::vector<Segment> segs = segmentize(a, b);
  for (const Segment& s : segs) {
    if (s.da != s.db) return s.da < s.db ? -1 : 1;
  }
  return 0;
}

std::vector<Run> canonicalize(std::vector<Run> runs, int base) {
  std::vector<Run> kept;
  kept.reserve(runs.size());
  std::sort(runs.begin(), runs.end(),
            [](const Run& x, const Run& y) { return x.lo < y.lo; });
  for (Run& r : runs) {
    if (r.digit == 0) continue;
    if (r.digit < 0 || r.digit >= base)
      throw std::invalid_argument("run digit out of range");
    if (r.lo > r.hi) throw std::invalid_argument("run with lo > hi");
    if (!kept.empty() && kept.back().hi >= r.lo)
      throw std::invalid_argument("overlapping runs");
    if (!kept.empty() && kept.back().hi + 1 == r.lo && kept.back().digit == r.digit)
      kept.back().hi = r.hi;
    else
      kept.push_back(std::move(r));
  }
  return kept;
}

}  // namespace

Numeral Numeral::from_power(int base, const BigInt& exp) {
  Numeral n(base);
  n.sign_ = 1;
  n.runs_ = {Run{exp, exp, 1}};
  return n;
}

Numeral Numeral::from_int(int base, std::int64_t value) {
  Numeral n(base);
  if (value == 0) return n;
  n.sign_ = value < 0 ? -1 : 1;
  std::uint64_t v = value < 0 ? -static_cast<std::uint64_t>(value) : value;
  std::vector<Run> pieces;
  BigInt e = 0;
  while (v != 0) {
    int d = static_cast<int>(v % static_cast<std::uint64_t>(base));
    if (d != 0) pieces.push_back(Run{e, e, d});
    v /= static_cast<std::uint64_t>(base);
    e -= 1;
  }
  std::reverse(pieces.begin(), pieces.end());
  n.runs_ = canonicalize(std::move(pieces), base);
  return n;
}

Numeral Numeral::from_runs(int base, int sign, std::vector<Run> runs) {
  Numeral n(base);
  n.runs_ = canonicalize(std::move(runs), base);
  n.sign_ = n.runs_.empty() ? 0 : (sign < 0 ? -1 : 1);
  if (sign == 0 && !n.runs_.empty())
    throw std::invalid_argument("nonzero runs with zero sign");
  return n;
}

Numeral Numeral::negated() const {
  Numeral n = *this;
  n.sign_ = -n.sign_;
  return n;
}

Numeral Numeral::abs() const {
  Numeral n = *this;
  if (n.sign_ != 0) n.sign_ = 1;
  return n;
}

Numeral Numeral::shifted(const BigInt& shift) const {
  Numeral n = *this;
  for (Run& r : n.runs_) {
    r.lo += shift;
    r.hi += shift;
  }
  return n;
}

Numeral Numeral::scaled(const BigInt& n) const {
  if (n < 0) throw std::invalid_argument("scaled: negative multiplier");
  Numeral acc(base_);
  if (n == 0 || sign_ == 0) return acc;
  if (base_ == 2) {
    // Walk set bits; sparse multipliers touch few of them.
    BigInt m = n;
    while (m != 0) {
      std::size_t bit = boost::multiprecision::lsb(m);
      acc = add(acc, shifted(-BigInt(bit)));
      boost::multiprecision::bit_unset(m, bit);
    }
    return acc;
  }
  // Generic: base-b digits of the multiplier, shift-and-add.
  BigInt m = n;
  BigInt pos = 0;
  while (m != 0) {
    BigInt q = m / base_;
    int d = static_cast<int>(m - q * base_);
    if (d != 0) {
      Numeral term = shifted(-pos);
      Numeral dsum(base_);
      for (int i = 0; i < d; ++i) dsum = add(dsum, term);
      acc = add(acc, dsum);
    }
    m = q;
    pos += 1;
  }
  return acc;
}

const BigInt& Numeral::leading_exp() const {
  if (runs_.empty()) throw std::logic_error("leading_exp of zero");
  return runs_.front().lo;
}

BigRat Numeral::to_rational(std::int64_t max_span) const {
  if (sign_ == 0) return BigRat(0);
  BigInt span = runs_.back().hi - runs_.front().lo;
  if (span > max_span)
    throw std::overflow_error("to_rational: positional span too large");
  // Accumulate digits most-significant-first over the whole span.
  BigInt num = 0;
  BigInt prev = runs_.front().lo - 1;
  for (const Run& r : runs_) {
    BigInt gap = r.lo - prev - 1;
    num *= big_pow(static_cast<unsigned>(base_), gap);
    BigInt len = r.hi - r.lo + 1;
    // digit repeated len times: digit * (base^len - 1) / (base - 1)
    BigInt block = BigInt(r.digit) * (big_pow(static_cast<unsigned>(base_), len) - 1) / (base_ - 1);
    num = num * big_pow(static_cast<unsigned>(base_), len) + block;
    prev = r.hi;
  }
  BigInt den = 1;
  BigRat value;
  if (runs_.back().hi >= 0) {
    den = big_pow(static_cast<unsigned>(base_), runs_.back().hi);
    value = BigRat(num, den);
  } else {
    value = BigRat(num * big_pow(static_cast<unsigned>(base_), -runs_.back().hi), 1);
  }
  if (sign_ < 0) value = -value;
  return value;
}

std::string Numeral::approx_decimal(int significant) const {
  std::ostringstream os;
  if (sign_ == 0) return "~0";
  // Mantissa from the most significant few positions, order from the leading
  // exponent. Display only; equality never goes through here.
  double mant = 0;
  double scale = 1;
  const BigInt& lead = runs_.front().lo;
  for (const Run& r : runs_) {
    BigInt off = r.lo - lead;
    if (off > 64) break;
    std::int64_t o = off.convert_to<std::int64_t>();
    BigInt len = r.hi - r.lo + 1;
    std::int64_t l = len > 64 ? 64 : len.convert_to<std::int64_t>();
    double p = std::pow(static_cast<double>(base_), -static_cast<double>(o));
    for (std::int64_t i = 0; i < l; ++i) {
      mant += r.digit * p * scale;
      p /= base_;
    }
  }
  os << "~" << (sign_ < 0 ? "-" : "") << std::setprecision(significant) << mant
     << "*" << base_ << "^(" << BigInt(-lead).str() << ") [" << runs_.size() << " runs]";
  return os.str();
}

std::string Numeral::debug_string() const {
  std::ostringstream os;
  os << (sign_ < 0 ? "-" : sign_ == 0 ? "0" : "+") << "base" << base_ << "{";
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i) os << ",";
    os << runs_[i].digit << "@" << runs_[i].lo.str();
    if (runs_[i].hi != runs_[i].lo) os << ".." << runs_[i].hi.str();
  }
  os << "}";
  return os.str();
}

bool Numeral::canonical() const {
  if (base_ < 2) return false;
  if ((sign_ == 0) != runs_.empty()) return false;
  if (sign_ < -1 || sign_ > 1) return false;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    const Run& r = runs_[i];
    if (r.digit < 1 || r.digit > base_ - 1) return false;
    if (r.lo > r.hi) return false;
    if (i > 0) {
      if (runs_[i - 1].hi >= r.lo) return false;
      if (runs_[i - 1].hi + 1 == r.lo && runs_[i - 1].digit == r.digit) return false;
    }
  }
  return true;
}

namespace {

void check_same_base(const Numeral& a, const Numeral& b) {
  if (a.base() != b.base())
    throw std::invalid_argument("numeral base mismatch");
}

}  // namespace

Numeral add(const Numeral& a, const Numeral& b) {
  check_same_base(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.sign() == b.sign()) {
    return Numeral::from_runs(a.base(), a.sign(), add_mag(a.runs(), b.runs(), a.base()));
  }
  int c = cmp_mag(a.runs(), b.runs());
  if (c == 0) return Numeral::zero(a.base());
  if (c > 0)
    return Numeral::from_runs(a.base(), a.sign(), sub_mag(a.runs(), b.runs(), a.base()));
  return Numeral::from_runs(a.base(), b.sign(), sub_mag(b.runs(), a.runs(), a.base()));
}

Numeral sub(const Numeral& a, const Numeral& b) { return add(a, b.negated()); }

int compare(const Numeral& a, const Numeral& b) {
  check_same_base(a, b);
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  int c = cmp_mag(a.runs(), b.runs());
  return a.sign() > 0 ? c : -c;
}

}  // namespace microset
