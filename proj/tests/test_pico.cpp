#include "microset/pico.hpp"

#include <doctest.h>

using namespace microset;
using namespace microset::pico;

TEST_CASE("h and k tables") {
  Scheme sch;
  CHECK(sch.k_exp(0) == 1);
  CHECK(sch.k_exp(1) == 1);
  CHECK(sch.k_exp(2) == 2);
  CHECK(sch.h(0) == 4);
  CHECK(sch.h(1) == 4);
  CHECK(sch.h(2) == 16);
  CHECK(sch.h(3) == 64);   // 4^2 = 16 <= 24 < 64
  CHECK(sch.h(4) == 256);  // 4^3 = 64 <= 120 < 256
}

TEST_CASE("initial intervals: lengths and pairwise distance >= 1/13") {
  Scheme sch;
  std::vector<Interval> all;
  for (int n = 0; n <= 4; ++n) {
    for (std::int64_t k = 0; k < sch.h(n); ++k) {
      Interval iv = sch.interval_of({n, k});
      CHECK(iv.length() ==
            Numeral::from_power(13, factorial(n + 1) * factorial(k + 1)));
      all.push_back(iv);
    }
  }
  REQUIRE(all.size() == 4u + 4 + 16 + 64 + 256);
  Numeral eps = Numeral::from_power(13, 1);
  for (std::size_t i = 1; i < all.size(); ++i) {
    // lexicographic layout is ordered; checking neighbours suffices
    CHECK(le(eps, distance(all[i - 1], all[i])));
  }
}

TEST_CASE("cells partition and thresholds") {
  Scheme sch;
  // step-0 cells: (1,0) b=1, (2,0) b=2, (3,0) b=3, (4,0) b=4 (threshold
  // pushes (4,0) past b=1), then the k=1 row
  const Cell* c10 = sch.cell_of({1, 0});
  REQUIRE(c10 != nullptr);
  CHECK(c10->spaced_at == 0);
  CHECK(c10->bs == std::vector<std::int64_t>{1});
  const Cell* c40 = sch.cell_of({4, 0});
  REQUIRE(c40 != nullptr);
  CHECK(c40->bs.front() >= 2);  // (4^1+1)! = 120 < E+2 = 122

  // every populated cell's min b respects the threshold and bs are disjoint
  // within a step
  std::map<std::pair<int, std::int64_t>, int> seen;
  for (const Cell& c : sch.cells()) {
    for (std::int64_t b : c.bs) {
      CHECK(++seen[{c.spaced_at, b}] == 1);
      CHECK(factorial(static_cast<std::int64_t>(std::pow(4, b)) + 1) >=
            factorial(c.id.step + 1) * factorial(c.id.index + 1) + 2);
    }
  }
}

TEST_CASE("members live inside their cells and carry exact lengths") {
  Scheme sch;
  for (const Cell& c : sch.cells()) {
    Interval host = sch.interval_of(c.id);
    auto kids = sch.children_of(c.id, 70);
    for (const auto& kid : kids) {
      Interval ki = sch.interval_of(kid);
      CHECK(contains(host, ki));
      CHECK(kid.step == c.spaced_at);
      CHECK(ki.length() ==
            Numeral::from_power(13, factorial(kid.step + 1) * factorial(kid.index + 1)));
    }
  }
}

TEST_CASE("host initials and g agree with the T-membership") {
  Scheme sch;
  for (const Cell& c : sch.cells()) {
    // g of the subdivided interval equals the step it was spaced at
    CHECK(sch.g_of(c.id) == c.spaced_at);
  }
  // g on initials: min(omega minus {n})
  CHECK(sch.g_of({0, 2}) == 1);
  CHECK(sch.g_of({3, 1}) == 0);
}

TEST_CASE("two-branch T rule matches geometry on materialized candidates") {
  Scheme sch;
  // first branch of T_2: step-1 members disjoint from all step-2 initials
  auto t2 = sch.t_candidates(2);
  int first_branch = 0, second_branch = 0;
  for (const auto& id : t2) {
    Interval iv = sch.interval_of(id);
    bool meets_step2_initial = false;
    for (std::int64_t i = 0; i < sch.h(2); ++i)
      if (intersects(iv, sch.interval_of({2, i}))) meets_step2_initial = true;
    bool meets_step1_initial = false;
    for (std::int64_t i = 0; i < sch.h(1); ++i)
      if (intersects(iv, sch.interval_of({1, i}))) meets_step1_initial = true;
    if (id.step == 1) {
      ++first_branch;
      CHECK(id.index >= sch.h(1));
      CHECK(!meets_step2_initial);
    } else {
      ++second_branch;
      CHECK(id.step == 0);
      CHECK(meets_step1_initial);
    }
  }
  CHECK(first_branch > 0);
  CHECK(second_branch > 0);
}

TEST_CASE("stages materialize and nest inside hosts") {
  Scheme sch;
  auto s0 = sch.stage(0, 100);
  // initials (0,0..3) plus spaced step-0 members with index <= 100
  CHECK(s0.size() > 4);
  for (const auto& [id, iv] : s0) {
    CHECK(id.step == 0);
    if (!sch.is_initial(id)) {
      CHECK(contains(sch.interval_of(sch.host_initial(id)), iv));
    }
  }
  auto s1 = sch.stage(1, 100);
  CHECK(s1.size() > 4);
  auto s2 = sch.stage(2, 100);
  CHECK(s2.size() > 16);
}

TEST_CASE("x = -1 lies strictly left of the construction") {
  Scheme sch;
  Numeral x = sch.point_x();
  CHECK(lt(x, Numeral::zero(13)));
  CHECK(lt(x, sch.interval_of({0, 0}).lo));
}
