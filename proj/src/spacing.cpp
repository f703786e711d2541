#include "microset/spacing.hpp"

namespace microset::spacing {

namespace {

constexpr std::int64_t kMaxMaterializedMembers = 4096;
constexpr std::int64_t kMaxB = 12;

std::int64_t pow6(std::int64_t e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= 6;
  return v;
}

}  // namespace

std::vector<std::int64_t> F_of(const std::set<std::int64_t>& B) {
  std::vector<std::int64_t> out;
  for (std::int64_t b : B) {
    if (b < 0 || b > kMaxB) throw std::invalid_argument("F(B): b out of range");
    std::int64_t lo = 1;
    for (int i = 0; i < b; ++i) lo *= 4;
    for (std::int64_t k = lo; k < 4 * lo; ++k) out.push_back(k);
  }
  return out;  // B iterated ascending, blocks already sorted
}

Scheme::Scheme(int m, Interval host, std::set<std::int64_t> B)
    : m_(m), host_(std::move(host)), B_(std::move(B)) {
  if (m_ < 0) throw std::invalid_argument("spacing: m must be >= 0");
  if (B_.empty()) throw std::invalid_argument("spacing: B must be nonempty");
  if (host_.lo.base() != 13) throw std::invalid_argument("spacing host must be base 13");
  indices_ = F_of(B_);
  std::int64_t min_f = indices_.front();
  // precondition: |host| >= 13 * 13^-((min F(B)+1)!)
  Numeral bound = Numeral::from_power(13, factorial(min_f + 1) - 1);
  if (lt(host_.length(), bound))
    throw std::invalid_argument("spacing: host interval too short for min F(B)");
  // L = least level with 13 * 13^-((L+1)!) < |host|
  std::int64_t L = 0;
  while (true) {
    Numeral lv = Numeral::from_power(13, factorial(L + 1) - 1);
    if (lt(lv, host_.length())) break;
    if (++L > 100000) throw std::runtime_error("spacing: level search diverged");
  }
  L_ = L;
  if (L_ > min_f)
    throw std::invalid_argument(
        "spacing: host too snug, derived level exceeds min F(B); placements would not fit");
}

Numeral Scheme::scaffold_length(std::int64_t level) const {
  return Numeral::from_power(13, factorial(level + 1));
}

Interval Scheme::scaffold_interval(const ScaffoldRef& ref) const {
  if (ref.level < L_) throw std::invalid_argument("scaffold level below L");
  // parent chain indices from ref.level down to L
  std::vector<std::int64_t> chain;  // index at each level, deepest first
  std::int64_t idx = ref.index;
  for (std::int64_t lvl = ref.level; lvl > L_; --lvl) {
    chain.push_back(idx);
    idx %= pow6(lvl - L_);
  }
  chain.push_back(idx);  // level L index, < 7
  if (chain.back() >= 7) throw std::invalid_argument("scaffold index out of range");
  // walk back down accumulating flush offsets q * 2 * len(level)
  Numeral lo = host_.lo;
  std::int64_t lvl = L_;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it, ++lvl) {
    std::int64_t q = (lvl == L_) ? *it : *it / pow6(lvl - L_);
    if (q < 0 || q > 6) throw std::invalid_argument("scaffold index out of range");
    Numeral step = scaffold_length(lvl).scaled(2 * q);
    lo = add(lo, step);
  }
  return Interval(lo, add(lo, scaffold_length(ref.level)));
}

ScaffoldRef Scheme::thin_member(std::int64_t i) const {
  if (i < 0) throw std::invalid_argument("thin member index negative");
  // level L+d contributes 6^d thin members: indices 6*6^d .. 7*6^d - 1
  std::int64_t d = 0, cum = 0;
  while (cum + pow6(d) <= i) {
    cum += pow6(d);
    ++d;
    if (d > 24) throw std::overflow_error("thin member enumeration too deep");
  }
  std::int64_t offset = i - cum;
  return ScaffoldRef{L_ + d, 6 * pow6(d) + offset};
}

Placement Scheme::placement_at(std::size_t i) const {
  if (i >= indices_.size()) throw std::invalid_argument("placement index out of range");
  std::int64_t k = indices_[i];
  ScaffoldRef host = thin_member(static_cast<std::int64_t>(i));
  Interval cell = scaffold_interval(host);
  Numeral len = Numeral::from_power(13, factorial(m_ + 1) * factorial(k + 1));
  if (lt(cell.length(), len))
    throw std::logic_error("spacing: placement does not fit its thin member");
  Placement p;
  p.k = k;
  p.host = host;
  p.interval = Interval(cell.lo, add(cell.lo, len));
  return p;
}

std::vector<Placement> Scheme::placements() const {
  if (static_cast<std::int64_t>(indices_.size()) > kMaxMaterializedMembers)
    throw std::overflow_error("spacing: too many members to materialize");
  std::vector<Placement> out;
  out.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) out.push_back(placement_at(i));
  return out;
}

std::vector<Placement> Scheme::placements_for(std::int64_t b) const {
  std::int64_t lo = 1;
  for (int i = 0; i < b; ++i) lo *= 4;
  std::vector<Placement> out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= lo && indices_[i] < 4 * lo) out.push_back(placement_at(i));
  }
  return out;
}

}  // namespace microset::spacing
