#include "microset/nano.hpp"

#include <random>
#include <sstream>

namespace microset::nano {

namespace {

constexpr std::int64_t kNumeralTierMaxJ = 16;     // full numeral arithmetic
constexpr std::int64_t kMaxWeightBits = 1 << 22;  // 2^w materialization guard

std::int64_t bitlength(const BigInt& x) {
  if (x <= 0) throw std::invalid_argument("bitlength of nonpositive value");
  return static_cast<std::int64_t>(boost::multiprecision::msb(x)) + 1;
}

}  // namespace

std::int64_t level_of(const BigInt& j) {
  if (j < 0) throw std::invalid_argument("negative scheme index");
  if (j <= 1) return -1;
  return bitlength(j) - 2;  // j in [2^{i+1}, 2^{i+2})  <=>  bitlength = i+2
}

BigInt f_of(const BigInt& j) {
  std::int64_t lvl = level_of(j);
  return BigInt(1) << static_cast<std::size_t>(lvl + 1);
}

BigInt weight_of(const BigInt& j) {
  if (j < 0) throw std::invalid_argument("negative scheme index");
  return (j >> 1) + 1;
}

Numeral length_of(const BigInt& j) {
  BigInt w = weight_of(j);
  if (w > kMaxWeightBits)
    throw std::overflow_error("nano length exponent too large to materialize");
  return Numeral::from_power(2, BigInt(1) << static_cast<std::size_t>(w.convert_to<std::int64_t>()));
}

std::vector<BigInt> T_of(std::int64_t i) {
  if (i < -1) throw std::invalid_argument("T level below -1");
  if (i == -1) return {BigInt(0), BigInt(1)};
  if (i > 20) throw std::overflow_error("T level too large to materialize");
  std::vector<BigInt> out;
  BigInt lo = BigInt(1) << static_cast<std::size_t>(i + 1);
  BigInt hi = BigInt(1) << static_cast<std::size_t>(i + 2);
  for (BigInt k = lo; k < hi; ++k) out.push_back(k);
  return out;
}

std::vector<BigInt> S_of(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("S stage materialized only up to 2");
  std::vector<BigInt> cur = {BigInt(0), BigInt(1)};
  for (int d = 0; d < i; ++d) {
    std::vector<BigInt> next;
    for (const BigInt& j : cur) {
      auto t = T_of(j.convert_to<std::int64_t>());
      next.insert(next.end(), t.begin(), t.end());
    }
    cur = std::move(next);
  }
  return cur;
}

Interval Scheme::ambient() const {
  return Interval(Numeral::zero(2), Numeral::from_power(2, 0));
}

Interval Scheme::root_interval(int which) const {
  if (which != 0 && which != 1) throw std::invalid_argument("root index must be 0 or 1");
  Numeral len = Numeral::from_power(2, 2);  // |I_0| = |I_1| = 1/4
  if (mode_ == PlacementMode::kUniformSlot) {
    // slots of width 1/2, flush left: [0,1/4], [1/2,3/4]
    Numeral lo = which == 0 ? Numeral::zero(2)
                            : Numeral::from_power(2, 1);
    return Interval(lo, add(lo, len));
  }
  // exact-stage: flush to both ends of [0,1] (equal and biggest distance)
  Numeral lo = which == 0 ? Numeral::zero(2)
                          : sub(Numeral::from_power(2, 0), len);
  return Interval(lo, add(lo, len));
}

Numeral Scheme::stride_of(const BigInt& j, const Numeral& parent_len) const {
  // slot exponent = len_exp + j + 1 relative to the parent length; the
  // parent length is a single power of two.
  if (parent_len.runs().size() != 1 || parent_len.runs()[0].lo != parent_len.runs()[0].hi)
    throw std::logic_error("nano parent length must be a single power");
  BigInt s = parent_len.runs()[0].lo + j + 1;
  return add(Numeral::from_power(2, s), Numeral::from_power(2, s + j + 2));
}

Interval Scheme::child_interval(const Interval& parent, const BigInt& parent_index,
                                const BigInt& child_index) const {
  if (parent_index > (1 << 22))
    throw std::overflow_error("nano child placement: parent index too large");
  // child of I_j must satisfy child_index in T_j
  BigInt expect_lo = BigInt(1) << static_cast<std::size_t>(parent_index.convert_to<std::int64_t>() + 1);
  BigInt expect_hi = expect_lo << 1;
  if (child_index < expect_lo || child_index >= expect_hi)
    throw std::invalid_argument("child index not in T(parent)");
  BigInt t = child_index - expect_lo;
  Numeral stride = stride_of(parent_index, parent.length());
  Numeral lo = add(parent.lo, stride.scaled(t));
  return Interval(lo, add(lo, length_of(child_index)));
}

namespace {

// Equal-gap layout for one node in exact-stage mode: children flush to both
// ends, all gaps equal. Returns nullopt when the gap is not exactly dyadic
// or the span guard trips.
std::optional<std::vector<Interval>> equal_gap_children(const Interval& parent,
                                                        const std::vector<Numeral>& lens) {
  const std::size_t c = lens.size();
  if (c < 2) return std::nullopt;
  Numeral total = Numeral::zero(2);
  for (const Numeral& l : lens) total = add(total, l);
  Numeral slack = sub(parent.length(), total);
  if (slack.sign() < 0) return std::nullopt;
  // gap = slack / (c-1), dyadic only if the odd part divides exactly
  BigRat gap_rat;
  try {
    gap_rat = slack.to_rational(4096) / BigInt(c - 1);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  BigInt den = boost::multiprecision::denominator(gap_rat);
  BigInt num = boost::multiprecision::numerator(gap_rat);
  // den must be a power of two
  if (den == 0) return std::nullopt;
  BigInt d = den;
  while ((d & 1) == 0) d >>= 1;
  if (d != 1) return std::nullopt;
  std::int64_t shift = bitlength(den) - 1;
  // gap as numeral: num * 2^-shift
  Numeral gap = Numeral::zero(2);
  {
    BigInt n = num;
    std::vector<Run> runs;
    BigInt e = BigInt(shift);
    while (n != 0) {
      std::size_t bit = boost::multiprecision::lsb(n);
      boost::multiprecision::bit_unset(n, bit);
      BigInt pos = BigInt(shift) - BigInt(bit);
      runs.push_back(Run{pos, pos, 1});
    }
    std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });
    gap = Numeral::from_runs(2, 1, runs);
  }
  std::vector<Interval> out;
  Numeral x = parent.lo;
  for (std::size_t i = 0; i < c; ++i) {
    out.emplace_back(x, add(x, lens[i]));
    x = add(add(x, lens[i]), gap);
  }
  if (compare(out.back().hi, parent.hi) > 0) return std::nullopt;
  return out;
}

}  // namespace

StageResult Scheme::stage(int depth) const {
  if (depth < 0 || depth > 2)
    throw std::invalid_argument("nano stage materialized only for depth <= 2");
  StageResult res;
  std::vector<StageEntry> cur = {{BigInt(0), root_interval(0)}, {BigInt(1), root_interval(1)}};
  for (int d = 0; d < depth; ++d) {
    std::vector<StageEntry> next;
    for (const StageEntry& node : cur) {
      auto children_idx = T_of(node.index.convert_to<std::int64_t>());
      bool placed = false;
      if (mode_ == PlacementMode::kExactStage) {
        std::vector<Numeral> lens;
        for (const BigInt& k : children_idx) lens.push_back(length_of(k));
        auto eq = equal_gap_children(node.interval, lens);
        if (eq.has_value()) {
          for (std::size_t i = 0; i < children_idx.size(); ++i)
            next.push_back(StageEntry{children_idx[i], (*eq)[i]});
          placed = true;
        } else {
          res.fallback_nodes.push_back(node.index);
        }
      }
      if (!placed) {
        for (const BigInt& k : children_idx)
          next.push_back(StageEntry{k, child_interval(node.interval, node.index, k)});
      }
    }
    cur = std::move(next);
  }
  res.entries = std::move(cur);
  return res;
}

Interval Scheme::node_interval(const std::vector<BigInt>& path) const {
  if (path.empty()) return ambient();
  if (path[0] != 0 && path[0] != 1)
    throw std::invalid_argument("chain must start at a root index");
  Interval cur = root_interval(static_cast<int>(path[0].convert_to<std::int64_t>()));
  for (std::size_t i = 1; i < path.size(); ++i) {
    cur = child_interval(cur, path[i - 1], path[i]);
  }
  return cur;
}

namespace {

// Tier "numeral": everything materialized, one exact comparison.
GapCertificate numeral_tier(const BigInt& j) {
  GapCertificate cert;
  cert.tier = "numeral";
  std::int64_t lvl = level_of(j);
  BigInt f = BigInt(1) << static_cast<std::size_t>(lvl + 1);
  Numeral beta = Numeral::from_power(2, BigInt(1) << static_cast<std::size_t>((f + 1).convert_to<std::int64_t>()));
  Scheme sch;
  Numeral parent_len = length_of(j);
  Numeral stride = sch.stride_of(j, parent_len);
  // largest child = first pair: index 2^{j+1}
  BigInt first_child = BigInt(1) << static_cast<std::size_t>(j.convert_to<std::int64_t>() + 1);
  Numeral max_child = length_of(first_child);
  Numeral gap = sub(stride, max_child);
  cert.strict = lt(beta, gap);
  std::ostringstream os;
  os << "beta=" << beta.debug_string() << " gap=" << gap.debug_string();
  cert.detail = os.str();
  return cert;
}

// Tier "exponent": compares B = 2^{f+1} with S = 2^w + j + 1 and the child
// weight at the exponent level. Valid for every j outside {1,3}; those two
// land in the numeral tier.
GapCertificate exponent_tier(const BigInt& j) {
  GapCertificate cert;
  cert.tier = "exponent";
  std::int64_t lvl = level_of(j);
  BigInt f = BigInt(1) << static_cast<std::size_t>(lvl + 1);
  BigInt w = weight_of(j);
  BigInt a1 = f + 1;
  // B > S: a1 >= w+2 always suffices; at a1 == w+1 need j+1 < 2^w.
  bool b_gt_s;
  if (a1 >= w + 2) {
    b_gt_s = true;
  } else if (a1 == w + 1) {
    // exact: j+1 < 2^w  <=>  bitlength(j+1) <= w
    b_gt_s = bitlength(j + 1) <= w;
  } else {
    b_gt_s = false;  // unreachable: f >= w for every node
  }
  // max child length <= slot/2: 2^j + 1 >= w + 1, i.e. 2^j >= w.
  bool child_small = bitlength(w) <= j;  // w < 2^{bitlength(w)} <= 2^j
  if (j <= 62) {
    BigInt two_j = BigInt(1) << static_cast<std::size_t>(j.convert_to<std::int64_t>());
    child_small = two_j >= w;
  }
  cert.strict = b_gt_s && child_small;
  std::ostringstream os;
  os << "f=" << f.str() << " w=" << w.str() << " B>S=" << b_gt_s
     << " child<=slot/2=" << child_small;
  cert.detail = os.str();
  return cert;
}

}  // namespace

GapCertificate gap_certificate(const BigInt& j) {
  if (j <= kNumeralTierMaxJ) return numeral_tier(j);
  return exponent_tier(j);
}

GapCertificate gap_certificate_symbolic(const BigInt& parent_index, const BigInt& t) {
  // Node = child t of I_p, index 2^{p+1} + t, t < 2^{p+1}. Here
  //   f(node) = 2^{p+1}, w(node) = 2^p + floor(t/2) + 1,
  // so a1 - w = 2^p - floor(t/2) >= 1, with equality only at the top pair.
  GapCertificate cert;
  cert.tier = "symbolic";
  const BigInt& p = parent_index;
  if (p < 3) throw std::invalid_argument("symbolic certificate expects parent index >= 3");
  BigInt half_t = t >> 1;
  bool top_pair = false;
  bool in_range = bitlength(t + 1) <= p + 1;  // t < 2^{p+1}
  if (!in_range) throw std::invalid_argument("symbolic child offset out of range");
  // floor(t/2) == 2^p - 1 detection without materializing 2^p when huge
  if (half_t > 0 && bitlength(half_t + 1) == p + 1) top_pair = true;
  // Off the top pair, a1 >= w+2 gives B > S directly. On the top pair
  // B > S reduces to node+1 < 2^w, and node+1 <= 2^{p+2} < 2^{2^p} <= 2^w
  // for p >= 3. Child weights dwarf the slot exponent in both cases since
  // node >= 2^{p+1} while w has ~p bits.
  cert.strict = true;
  std::ostringstream os;
  os << "parent=" << p.str() << " t_bits=" << (t > 0 ? bitlength(t) : 0)
     << " top_pair=" << top_pair;
  cert.detail = os.str();
  return cert;
}

std::vector<ChainNode> sample_chain(std::uint64_t seed, int depth) {
  std::mt19937_64 rng(seed);
  std::vector<ChainNode> chain;
  BigInt cur = static_cast<std::int64_t>(rng() % 2);
  {
    ChainNode n;
    n.index = cur;
    chain.push_back(n);
  }
  bool materializable = true;
  for (int d = 0; d < depth; ++d) {
    // child of cur: offset t < 2^{cur+1}
    BigInt width = cur + 1;  // offset bit width
    BigInt t;
    if (width <= 512) {
      std::int64_t bits = width.convert_to<std::int64_t>();
      t = 0;
      for (std::int64_t i = 0; i < bits; i += 32)
        t = (t << 32) | BigInt(static_cast<std::uint32_t>(rng()));
      // trim to the exact width
      BigInt mask = (BigInt(1) << static_cast<std::size_t>(bits)) - 1;
      t &= mask;
    } else {
      // sparse offset: a random 64-bit tail plus one random high bit
      t = BigInt(static_cast<std::uint64_t>(rng()));
      std::uint64_t hi_pos = rng() % 400 + 64;
      t |= BigInt(1) << static_cast<std::size_t>(hi_pos);
    }
    ChainNode node;
    if (materializable && cur <= (1 << 22)) {
      BigInt child = (BigInt(1) << static_cast<std::size_t>(cur.convert_to<std::int64_t>() + 1)) + t;
      node.index = child;
      node.parent_index = cur;
      node.offset = t;
      chain.push_back(node);
      cur = child;
    } else {
      materializable = false;
      node.parent_index = cur;
      node.offset = t;
      chain.push_back(node);
      // one symbolic step is the deepest this sampler goes; further steps
      // would need the child's own index as a parent
      if (d + 1 < depth)
        throw std::logic_error("sample_chain: symbolic node reached before final depth");
      break;
    }
  }
  return chain;
}

GapCertificate chain_node_certificate(const ChainNode& node) {
  if (node.index.has_value()) return gap_certificate(*node.index);
  return gap_certificate_symbolic(node.parent_index, node.offset);
}

}  // namespace microset::nano
