#include "microset/procedures.hpp"

#include <doctest.h>

#include <random>

using namespace microset;
using namespace microset::procedures;

namespace {

Numeral dy(std::int64_t num, std::int64_t den_pow = 0) {
  return Numeral::from_int(2, num).shifted(BigInt(den_pow));
}

}  // namespace

TEST_CASE("compact_shift: single point, k=3, lands at index 4") {
  auto src = make_point_source({dy(0)});
  auto r = compact_shift(*src, PowerFamily::nano(), 3, EpsilonSpec(2, 1));
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].index == 4);
  CHECK(contains_point(r.entries[0].interval, dy(0)));
  CHECK(validate_family_cover(src->stage_set(0), PowerFamily::nano(), EpsilonSpec(2, 1),
                              r.entries));
}

TEST_CASE("compact_shift: two points, k=3, indices 4 and 5") {
  auto src = make_point_source({dy(0), dy(1)});
  auto r = compact_shift(*src, PowerFamily::nano(), 3, EpsilonSpec(2, 1));
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].index == 4);
  CHECK(r.entries[1].index == 5);
  CHECK(validate_family_cover(src->stage_set(0), PowerFamily::nano(), EpsilonSpec(2, 1),
                              r.entries));
}

TEST_CASE("compact_shift on the nano scheme source") {
  auto src = make_nano_scheme_source(2);
  auto fam = shift_family(PowerFamily::nano(), 2);
  for (std::int64_t k : {0, 1}) {
    auto r = compact_shift(*src, fam, k, EpsilonSpec(2, 1));
    for (const auto& e : r.entries) CHECK(e.index > k);
    std::string why;
    CHECK(validate_family_cover(src->stage_set(2), fam, EpsilonSpec(2, 1), r.entries, &why));
    if (r.pigeonhole_applicable) CHECK(r.top_k_occupancy >= 2 * r.effective_k);
  }
  // k=0, deeper eps: the fine cover escalates to stage 2 and still assembles
  auto r = compact_shift(*src, fam, 0, EpsilonSpec(2, 2));
  CHECK(validate_family_cover(src->stage_set(2), fam, EpsilonSpec(2, 2), r.entries));
}

TEST_CASE("compact_shift: mid-size k rides the shifted identity") {
  auto src = make_nano_scheme_source(2);
  auto fam = shift_family(PowerFamily::nano(), 2);
  auto r = compact_shift(*src, fam, 4, EpsilonSpec(2, 1));
  for (const auto& e : r.entries) CHECK(e.index > 4);
  CHECK(validate_family_cover(src->stage_set(2), fam, EpsilonSpec(2, 1), r.entries));
}

TEST_CASE("compact_shift reports the stage horizon honestly") {
  // far past the horizon every epsilon escalation leaves the materializable
  // stages; the finite presentation says so instead of guessing
  auto src = make_nano_scheme_source(2);
  auto fam = shift_family(PowerFamily::nano(), 2);
  CHECK_THROWS_AS(compact_shift(*src, fam, 40, EpsilonSpec(2, 1)), std::overflow_error);
}

TEST_CASE("sigma_union_cover") {
  auto s1 = make_point_source({dy(0)});
  auto s2 = make_point_source({dy(5)});
  auto r = sigma_union_cover({s1.get(), s2.get()}, PowerFamily::nano(), EpsilonSpec(2, 1));
  REQUIRE(r.joint.size() == 2);
  CHECK(r.joint[0].index < r.joint[1].index);  // strictly increasing blocks

  // empty list
  auto e = sigma_union_cover({}, PowerFamily::nano(), EpsilonSpec(2, 1));
  CHECK(e.joint.empty());

  // three translated finite point samples from the stage-0 set
  auto a = make_point_source({dy(0), dy(1, 2)});
  auto b = make_point_source({dy(10), dy(41, 2)});
  auto c = make_point_source({dy(20), dy(81, 2)});
  auto r3 = sigma_union_cover({a.get(), b.get(), c.get()}, PowerFamily::nano(),
                              EpsilonSpec(2, 1));
  std::vector<Interval> all;
  for (const auto& en : r3.joint) all.push_back(en.interval);
  IntervalSet targets = set_union(set_union(a->stage_set(0), b->stage_set(0)),
                                  c->stage_set(0));
  CHECK(covers(normalize_union(all), targets));
  std::string why;
  CHECK(validate_family_cover(targets, PowerFamily::nano(), EpsilonSpec(2, 1), r3.joint,
                              &why));
  // disjoint index blocks
  for (std::size_t i = 1; i < r3.joint.size(); ++i)
    CHECK(r3.joint[i - 1].index < r3.joint[i].index);
}

TEST_CASE("decompose_m: identity at m=1") {
  auto src = make_nano_scheme_source(1);
  auto fam = shift_family(PowerFamily::nano(), 2);
  auto dec = decompose_m(*src, fam, 1, 0);
  REQUIRE(dec.part_stages.size() == 1);
  CHECK(covers(dec.part_stages[0], src->stage_set(1)));
}

TEST_CASE("decompose_m: m=2 on the scheme validates at eps 1/2 and 1/4") {
  // The stage-1 presentation is too coarse for the index bookkeeping (a
  // solid 2^-4 piece cannot ride budgets beyond f_1), so the decomposition
  // works from the stage-2 refinement.
  auto src = make_nano_scheme_source(2);
  auto dec = decompose_m(*src, PowerFamily::nano(), 2, 1);
  REQUIRE(dec.part_stages.size() == 2);
  // parts union covers the stage set
  CHECK(covers(set_union(dec.part_stages[0], dec.part_stages[1]), src->stage_set(2)));
  // each part's covers validate against plain nano budgets
  for (std::size_t j = 0; j < 2; ++j) {
    for (int n = 0; n <= 1; ++n) {
      EpsilonSpec eps(2, n + 1);
      std::string why;
      CHECK(validate_family_cover(dec.part_stages[j], PowerFamily::nano(), eps,
                                  dec.part_covers[j][static_cast<std::size_t>(n)], &why));
    }
  }
  // block n uses only flat indices >= m*l_n
  for (std::size_t n = 0; n < dec.blocks.size(); ++n) {
    for (const auto& e : dec.blocks[n]) CHECK(e.index >= 2 * dec.cuts[n]);
  }
  // cuts strictly increase
  for (std::size_t i = 1; i < dec.cuts.size(); ++i) CHECK(dec.cuts[i] > dec.cuts[i - 1]);
}

TEST_CASE("null_to_family: parametric input") {
  // the stopping rule certifies a[m][n] at row j = m+n+1, so the table must
  // reach that deep
  auto in = parametric_null_input(12, 8);
  auto r = null_to_family(in, 5, 5);
  // row maxima sit at j = m: a_{m,n} = 2^-((m+3)+n)
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n)
      CHECK(r.a[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] ==
            Numeral::from_power(2, m + 3 + n));
  CHECK(r.row_sum_bounded);
  CHECK(r.vanishing);
  CHECK(r.monotone_in_m);
  CHECK(r.dominates_input);
  CHECK(r.chain_in_n);
}

TEST_CASE("null_to_family: 50 random valid inputs") {
  std::mt19937_64 rng(2468);
  for (int trial = 0; trial < 50; ++trial) {
    NullCoverInput in;
    int m_count = 3 + static_cast<int>(rng() % 3);
    int n_count = 3 + static_cast<int>(rng() % 3);
    int rows = m_count + 2 * n_count + 4;  // deep enough for the stopping rule
    for (int m = 0; m < rows; ++m) {
      std::vector<Numeral> row;
      std::int64_t exp = m + 3;
      for (int n = 0; n < n_count + 2; ++n) {
        // strictly shrinking keeps the row sum below 2^-(m+2)
        exp += 1 + static_cast<std::int64_t>(rng() % 2);
        row.push_back(Numeral::from_power(2, exp));
      }
      in.rows.push_back(std::move(row));
    }
    auto r = null_to_family(in, m_count, n_count);
    CHECK(r.row_sum_bounded);
    CHECK(r.vanishing);
    CHECK(r.monotone_in_m);
    CHECK(r.dominates_input);
    CHECK(r.chain_in_n);
  }
}

TEST_CASE("null_to_family input validation") {
  NullCoverInput bad;
  bad.rows = {{dy(1, 1), dy(3, 2)}};  // increasing along the row
  CHECK_THROWS_AS(null_to_family(bad, 1, 1), std::invalid_argument);
  NullCoverInput heavy;
  heavy.rows = {{dy(1, 1), dy(1, 1)}};  // sum = 1 >= 2^-1
  CHECK_THROWS_AS(null_to_family(heavy, 1, 1), std::invalid_argument);
}

TEST_CASE("smz_merge case 1: reserved slots hold the points") {
  // A = a finite compact piece (two points), B = 3 points
  auto piece = make_point_source({dy(0), dy(1, 2)});
  std::vector<Numeral> B = {dy(-5), dy(7), dy(9)};
  auto plan = smz_merge_case1({piece.get()}, B, PowerFamily::nano(), EpsilonSpec(2, 1));
  REQUIRE(plan.reserved.size() == 3);
  CHECK(plan.reserved[0] == 0);
  // the reserved entries contain the points and obey the budgets
  std::set<std::int64_t> reserved(plan.reserved.begin(), plan.reserved.end());
  std::size_t found = 0;
  for (const auto& e : plan.cover) {
    Numeral budget = budget_length(PowerFamily::nano(), e.index, EpsilonSpec(2, 1));
    CHECK(le(e.interval.length(), budget));
    if (reserved.count(e.index)) {
      bool holds_point = false;
      for (const auto& b : B)
        if (contains_point(e.interval, b)) holds_point = true;
      CHECK(holds_point);
      ++found;
    }
  }
  CHECK(found == 3);
  // the piece is covered by the non-reserved entries
  std::vector<Interval> rest;
  for (const auto& e : plan.cover)
    if (!reserved.count(e.index)) rest.push_back(e.interval);
  CHECK(covers(normalize_union(rest), piece->stage_set(0)));
}

TEST_CASE("smz_merge case 2 on the rational G-delta rows") {
  // rows r of the nano G-presentation: eps_r = 2^-2^r, row r covers the
  // rationals with |I^r_i| = 2^-(2^r * 2^i)
  gdelta::Scheme g(PowerFamily::nano());
  Case2Input in;
  for (int r = 1; r <= 3; ++r) {
    std::int64_t n_param = (1 << (1 << r)) - 1;  // n+1 = 2^{2^r}
    in.rows.push_back(g.row(2, n_param, 24));
  }
  in.n = 0;  // rows vector is indexed from r=1; treat row 0 as level n
  in.m = 2;  // row index 2 = level 3 presentation
  in.k = 0;  // around q_0 = 0
  // eps = 1/2: t=1 < 2^n requires n >= 1; rows[0] corresponds to level 1
  in.n = 0;
  std::vector<BigRat> B = {BigRat(-5)};
  // level of rows[0] is 1, so eps must satisfy t < 2^1
  auto plan = smz_merge_case2(in, B, EpsilonSpec(2, 1));
  CHECK(plan.case_tag == 2);
  std::string why;
  CHECK(validate_case2(in, B, EpsilonSpec(2, 1), plan, &why));
  // one slot holds the point
  bool point_held = false;
  for (const auto& iv : plan.rat_cover)
    if (iv.center == BigRat(-5)) point_held = true;
  CHECK(point_held);
}

TEST_CASE("smz_merge case 2: empty B returns a re-indexed subfamily") {
  gdelta::Scheme g(PowerFamily::nano());
  Case2Input in;
  for (int r = 1; r <= 3; ++r) {
    std::int64_t n_param = (1 << (1 << r)) - 1;
    in.rows.push_back(g.row(2, n_param, 24));
  }
  in.n = 0;
  in.m = 2;
  in.k = 0;
  auto plan = smz_merge_case2(in, {}, EpsilonSpec(2, 1));
  std::string why;
  CHECK(validate_case2(in, {}, EpsilonSpec(2, 1), plan, &why));
}

TEST_CASE("validator rejects broken covers") {
  auto src = make_point_source({dy(0), dy(9)});
  std::vector<LabeledEntry> entries = {{1, Interval(dy(0), dy(0))}};
  CHECK(!validate_family_cover(src->stage_set(0), PowerFamily::nano(), EpsilonSpec(2, 1),
                               entries));  // second point uncovered
  std::vector<LabeledEntry> fat = {{3, Interval(dy(0), dy(2))}};
  CHECK(!validate_family_cover(src->stage_set(0), PowerFamily::nano(), EpsilonSpec(2, 1),
                               fat));  // exceeds budget
}
