#include "microset/intervals.hpp"

#include <doctest.h>

#include <random>

using namespace microset;

namespace {

Numeral dy(std::int64_t num, std::int64_t den_pow) {
  // num / 2^den_pow, num >= 0
  return Numeral::from_int(2, num).shifted(BigInt(den_pow));
}

Interval iv(std::int64_t a, std::int64_t b, std::int64_t den_pow = 0) {
  return Interval(dy(a, den_pow), dy(b, den_pow));
}

}  // namespace

TEST_CASE("normalize_union pinned cases") {
  auto s = normalize_union({iv(0, 4, 2), iv(2, 8, 2)});  // [0,1] u [1/2,2]
  REQUIRE(s.size() == 1);
  CHECK(s.components()[0] == iv(0, 8, 2));

  CHECK(normalize_union({}).empty());

  // {[0,1/4],[3/4,1],[1/4,1/2]} -> {[0,1/2],[3/4,1]}
  auto t = normalize_union({iv(0, 1, 2), iv(3, 4, 2), iv(1, 2, 2)});
  REQUIRE(t.size() == 2);
  CHECK(t.components()[0] == iv(0, 2, 2));
  CHECK(t.components()[1] == iv(3, 4, 2));
}

TEST_CASE("touching closed intervals merge") {
  auto s = normalize_union({iv(0, 1), iv(1, 2)});
  REQUIRE(s.size() == 1);
  CHECK(s.components()[0] == iv(0, 2));
}

TEST_CASE("min_gap") {
  auto s = normalize_union({iv(0, 1), iv(2, 3), iv(7, 8)});
  CHECK(eq(*min_gap(s), dy(1, 0)));

  auto t = normalize_union({iv(0, 1, 2), iv(2, 3, 2)});  // stage-0 style
  CHECK(eq(*min_gap(t), dy(1, 2)));

  CHECK(!min_gap(normalize_union({iv(0, 1)})).has_value());
}

TEST_CASE("max_hit_count") {
  auto s = normalize_union({iv(0, 1), iv(2, 3), iv(4, 5)});
  CHECK(max_hit_count(s, dy(2, 0)) == 2);
  CHECK(max_hit_count(s, Numeral::zero(2)) == 1);
  // window below min gap touches exactly one component
  CHECK(max_hit_count(s, dy(1, 1)) == 1);
}

TEST_CASE("measure") {
  auto s = normalize_union({iv(0, 1, 2), iv(3, 4, 2)});
  CHECK(eq(measure(s), dy(1, 1)));
  CHECK(measure(normalize_union({})).is_zero());
}

TEST_CASE("normalization is idempotent and order-insensitive; measure subadditive") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::int64_t> pos(0, 64);
  std::uniform_int_distribution<std::int64_t> len(0, 12);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Interval> raw;
    int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      std::int64_t a = pos(rng);
      raw.push_back(iv(a, a + len(rng), 4));
    }
    auto s = normalize_union(raw);
    // idempotent
    auto again = normalize_union(s.components());
    CHECK(s.components() == again.components());
    // order-insensitive
    std::shuffle(raw.begin(), raw.end(), rng);
    auto t = normalize_union(raw);
    CHECK(s.components() == t.components());
    // subadditive measure against a random split
    if (raw.size() >= 2) {
      std::vector<Interval> left(raw.begin(), raw.begin() + raw.size() / 2);
      std::vector<Interval> right(raw.begin() + raw.size() / 2, raw.end());
      auto ls = normalize_union(left), rs = normalize_union(right);
      Numeral whole = measure(set_union(ls, rs));
      CHECK(le(whole, add(measure(ls), measure(rs))));
    }
  }
}

TEST_CASE("max_hit_count monotone in len; 1 below min gap") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pos(0, 128);
  for (int iter = 0; iter < 150; ++iter) {
    std::vector<Interval> raw;
    for (int i = 0; i < 4; ++i) {
      std::int64_t a = pos(rng);
      raw.push_back(iv(a, a + 1 + static_cast<std::int64_t>(rng() % 6), 3));
    }
    auto s = normalize_union(raw);
    if (s.size() < 2) continue;
    Numeral l1 = dy(static_cast<std::int64_t>(rng() % 16), 3);
    Numeral l2 = add(l1, dy(static_cast<std::int64_t>(rng() % 16), 3));
    CHECK(max_hit_count(s, l1) <= max_hit_count(s, l2));
    Numeral g = *min_gap(s);
    Numeral just_below = sub(g, dy(1, 10));
    if (just_below.sign() > 0) CHECK(max_hit_count(s, just_below) == 1);
  }
}

TEST_CASE("base mismatch rejected") {
  Interval a(Numeral::zero(2), Numeral::from_power(2, 1));
  Interval b(Numeral::zero(13), Numeral::from_power(13, 1));
  CHECK_THROWS_AS(normalize_union({a, b}), std::invalid_argument);
}
