#include "microset/pico.hpp"

#include <algorithm>

namespace microset::pico {

namespace {

std::int64_t pow4(std::int64_t e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= 4;
  return v;
}

std::int64_t b_of_index(std::int64_t j) {
  // largest b with 4^b <= j ( j >= 1 )
  std::int64_t b = 0;
  while (pow4(b + 1) <= j) ++b;
  return b;
}

}  // namespace

Scheme::Scheme(Config cfg) : cfg_(cfg) {
  if (cfg_.step_horizon < 0 || cfg_.step_horizon > 4)
    throw std::invalid_argument("pico: step horizon out of range");
  if (cfg_.n_max < 1 || cfg_.n_max > 6)
    throw std::invalid_argument("pico: n_max out of range");
  if (cfg_.max_b < 1 || cfg_.max_b > 10)
    throw std::invalid_argument("pico: max_b out of range");
  build();
}

std::int64_t Scheme::k_exp(int n) const {
  const BigInt& f = factorial(n + 1);
  std::int64_t k = 0;
  while (BigInt(pow4(k)) <= f) ++k;
  return k;
}

std::int64_t Scheme::h(int n) const { return pow4(k_exp(n)); }

bool Scheme::is_initial(const IntervalId& id) const {
  return id.index < h(id.step);
}

BigInt Scheme::length_exp_of(const IntervalId& id) const {
  // |I^n_k| = eps_n^{(k+1)!} = 13^(-(n+1)!(k+1)!)
  return factorial(id.step + 1) * factorial(id.index + 1);
}

Interval Scheme::interval_of(const IntervalId& id) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = interval_cache_.find(id);
    if (it != interval_cache_.end()) return it->second;
  }
  Interval result;
  if (is_initial(id)) {
    if (id.step > cfg_.n_max) throw std::invalid_argument("initial level beyond horizon");
    // lexicographic slot layout on stride 2/13: all initials pairwise at
    // distance >= 1/13
    std::int64_t slot = 0;
    for (int n = 0; n < id.step; ++n) slot += h(n);
    slot += id.index;
    Numeral lo = Numeral::from_power(13, 1).scaled(2 * slot);
    result = Interval(lo, add(lo, Numeral::from_power(13, length_exp_of(id))));
  } else {
    const Cell* cell = owning_cell(id);
    if (cell == nullptr)
      throw std::invalid_argument("pico interval not produced within the truncation");
    std::int64_t b = b_of_index(id.index);
    // offset of id.index inside F(B(cell)); B is a singleton at desk scale
    const auto& idx = cell->scheme->indices();
    auto it = std::lower_bound(idx.begin(), idx.end(), id.index);
    if (it == idx.end() || *it != id.index)
      throw std::logic_error("pico member index missing from its cell");
    (void)b;
    auto placement = cell->scheme->placement_at(static_cast<std::size_t>(it - idx.begin()));
    result = placement.interval;
  }
  std::lock_guard<std::mutex> lock(mu_);
  interval_cache_.emplace(id, result);
  return result;
}

IntervalId Scheme::host_initial(const IntervalId& id) const {
  if (is_initial(id)) return id;
  const Cell* cell = owning_cell(id);
  if (cell == nullptr) throw std::invalid_argument("pico member outside truncation");
  return host_initial(cell->id);
}

int Scheme::g_of(const IntervalId& id) const {
  IntervalId host = host_initial(id);
  if (is_initial(id)) {
    // i == n case of the paper's definition: min(omega minus {n})
    return id.step == 0 ? 1 : 0;
  }
  if (id.step == host.step - 1) return host.step + 1;
  return id.step + 1;
}

const Cell* Scheme::cell_of(const IntervalId& id) const {
  auto it = cell_by_id_.find(id);
  return it == cell_by_id_.end() ? nullptr : &cells_[it->second];
}

const Cell* Scheme::owning_cell(const IntervalId& id) const {
  if (is_initial(id)) return nullptr;
  auto it = cell_by_step_b_.find({id.step, b_of_index(id.index)});
  if (it == cell_by_step_b_.end()) return nullptr;
  const Cell& c = cells_[it->second];
  // the member must actually be in F(B(cell))
  const auto& idx = c.scheme->indices();
  if (!std::binary_search(idx.begin(), idx.end(), id.index)) return nullptr;
  return &c;
}

std::int64_t Scheme::admissible_b(const BigInt& length_exp, int step) const {
  std::int64_t x = k_exp(step);
  while (x <= cfg_.max_b) {
    if (factorial(pow4(x) + 1) >= length_exp + 2) return x;
    ++x;
  }
  throw std::invalid_argument("pico: no admissible b within the horizon");
}

std::vector<IntervalId> Scheme::t_candidates(int m) const {
  std::vector<IntervalId> out;
  if (m == 0) {
    // initials of every step > 0
    for (int n = 1; n <= cfg_.n_max; ++n)
      for (std::int64_t k = 0; k < h(n); ++k) out.push_back({n, k});
    // priority order for population: small index first, then small step
    std::sort(out.begin(), out.end(), [](const IntervalId& a, const IntervalId& b) {
      if (a.index != b.index) return a.index < b.index;
      return a.step < b.step;
    });
    return out;
  }
  if (m == 1) {
    // step-0 initials, then step-0 members hosted by initials of step >= 2
    for (std::int64_t k = 0; k < h(0); ++k) out.push_back({0, k});
    for (const Cell& c : cells_) {
      if (c.spaced_at != 0) continue;
      if (host_initial(c.id).step < 2) continue;
      for (std::int64_t j : c.scheme->indices()) out.push_back({0, j});
    }
    std::stable_sort(out.begin() + h(0), out.end(),
                     [](const IntervalId& a, const IntervalId& b) { return a.index < b.index; });
    return out;
  }
  // m >= 2: first branch (m-1, k >= h(m-1)) disjoint from step-m initials;
  // second branch (m-2, k) intersecting step-(m-1) initials. Membership is
  // structural: a member is disjoint from every initial except the one
  // hosting it.
  for (const Cell& c : cells_) {
    if (c.spaced_at != m - 1) continue;
    for (std::int64_t j : c.scheme->indices()) {
      IntervalId member{m - 1, j};
      if (host_initial(member).step != m) out.push_back(member);
    }
  }
  for (const Cell& c : cells_) {
    if (c.spaced_at != m - 2) continue;
    for (std::int64_t j : c.scheme->indices()) {
      IntervalId member{m - 2, j};
      if (host_initial(member).step == m - 1) out.push_back(member);
    }
  }
  std::sort(out.begin(), out.end(), [](const IntervalId& a, const IntervalId& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.step < b.step;
  });
  return out;
}

void Scheme::populate_step(int m, const std::vector<IntervalId>& candidates) {
  // Ascending b values go to the earliest unserved candidate that admits
  // them (thresholds may force skipping a too-small b for a deep cell).
  std::vector<bool> used(candidates.size(), false);
  for (std::int64_t b = k_exp(m); b <= cfg_.max_b; ++b) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      if (cell_by_id_.count(candidates[i])) { used[i] = true; continue; }
      std::int64_t tmin;
      try {
        tmin = admissible_b(length_exp_of(candidates[i]), m);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (tmin > b) continue;
      Cell cell;
      cell.id = candidates[i];
      cell.spaced_at = m;
      cell.bs = {b};
      cell.scheme = std::make_shared<spacing::Scheme>(m, interval_of(cell.id),
                                                      std::set<std::int64_t>{b});
      cell_by_id_[cell.id] = cells_.size();
      cell_by_step_b_[{m, b}] = cells_.size();
      cells_.push_back(std::move(cell));
      used[i] = true;
      break;
    }
  }
}

void Scheme::build() {
  for (int m = 0; m <= cfg_.step_horizon; ++m) {
    auto candidates = t_candidates(m);
    populate_step(m, candidates);
  }
}

std::vector<IntervalId> Scheme::children_of(const IntervalId& id,
                                            std::int64_t index_cap) const {
  const Cell* cell = cell_of(id);
  std::vector<IntervalId> out;
  if (cell == nullptr) return out;
  for (std::int64_t j : cell->scheme->indices())
    if (j <= index_cap) out.push_back({cell->spaced_at, j});
  return out;
}

std::vector<std::pair<IntervalId, Interval>> Scheme::stage(int step,
                                                           std::int64_t index_cap) const {
  std::vector<std::pair<IntervalId, Interval>> out;
  if (step <= cfg_.n_max) {
    for (std::int64_t k = 0; k < h(step) && k <= index_cap; ++k) {
      IntervalId id{step, k};
      out.emplace_back(id, interval_of(id));
    }
  }
  for (const Cell& c : cells_) {
    if (c.spaced_at != step) continue;
    for (std::int64_t j : c.scheme->indices()) {
      if (j > index_cap) continue;
      IntervalId id{step, j};
      out.emplace_back(id, interval_of(id));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace microset::pico
