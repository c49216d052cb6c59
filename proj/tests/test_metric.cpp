#include "doctest.h"

#include <random>

#include "coarselab/generators.hpp"
#include "oracles.hpp"

using namespace coarselab;
using oracles::zint;

namespace {

GeneratorSystem z2_basis(std::uint32_t n) {
  auto spec = bounded_sum_spec(2, n);
  std::vector<Element> gens;
  for (std::uint32_t i = 0; i < n; ++i) gens.push_back(basis_element(i, spec));
  return GeneratorSystem(spec, std::move(gens));
}

GeneratorSystem z_powers(std::uint32_t base, std::uint32_t count) {
  auto spec = integers_spec();
  std::vector<Element> gens;
  Int p = 1;
  for (std::uint32_t i = 0; i < count; ++i) {
    gens.push_back(int_element(p));
    p *= base;
  }
  return GeneratorSystem(spec, std::move(gens));
}

GeneratorSystem z_list(std::vector<long long> values) {
  std::vector<Element> gens;
  for (auto v : values) gens.push_back(zint(v));
  return GeneratorSystem(integers_spec(), std::move(gens));
}

}  // namespace

TEST_CASE("word distance on Z2 basis equals support symmetric difference") {
  auto sys = z2_basis(6);
  auto e = [&](std::uint32_t i) { return basis_element(i, sys.spec()); };
  auto x = add(e(0), e(1), sys.spec());
  auto y = add(e(1), e(2), sys.spec());
  auto d = word_distance(x, y, sys, 6);
  REQUIRE(d.value.has_value());
  CHECK(*d.value == 2);
  CHECK(*d.value == oracles::symdiff_distance(x, y));
  CHECK(word_distance(x, x, sys, 6).value == 0);
}

TEST_CASE("word distance on powers of three") {
  auto sys = z_powers(3, 7);
  auto d = word_distance(zint(0), zint(5), sys, 6);
  REQUIRE(d.value.has_value());
  CHECK(*d.value == 3);  // 5 = 9 - 3 - 1
  CHECK(oracles::brute_distance(zint(0), zint(5), sys, 3) == 3);
}

TEST_CASE("exceeds-bound is reported, not invented") {
  auto sys = z_list({2});
  auto d = word_distance(zint(0), zint(1), sys, 8);  // odd target, even subgroup
  CHECK(d.exceeds_bound());
  CHECK(d.search_bound == 8);
}

TEST_CASE("in_sumset matches exhaustive signed sums") {
  auto sys = z_powers(3, 7);
  CHECK(in_sumset(identity_element(), 0, sys));
  CHECK(in_sumset(zint(4), 2, sys));        // 4 = 3 + 1
  CHECK_FALSE(in_sumset(zint(13), 2, sys));  // no length-2 signed power sum
  auto a2 = oracles::sumset_product(sys, 2);
  CHECK(a2.count(zint(4)) == 1);
  CHECK(a2.count(zint(13)) == 0);
}

TEST_CASE("balls: radius 0, basis alphabet, mixed generators") {
  auto sys2 = z2_basis(4);
  auto x = add(basis_element(0, sys2.spec()), basis_element(2, sys2.spec()), sys2.spec());
  CHECK(ball(x, 0, sys2) == std::vector<Element>{x});

  auto b1 = ball(identity_element(), 1, sys2);
  CHECK(b1.size() == 5);
  for (std::uint32_t i = 0; i < 4; ++i)
    CHECK(std::count(b1.begin(), b1.end(), basis_element(i, sys2.spec())) == 1);

  auto sys13 = z_list({1, 3});
  auto got = ball(identity_element(), 1, sys13);
  std::vector<Element> want{zint(-3), zint(-1), zint(0), zint(1), zint(3)};
  std::sort(want.begin(), want.end(), element_less);
  CHECK(got == want);
}

TEST_CASE("ball cap fails fast") {
  auto sys = z2_basis(10);
  CHECK_THROWS_AS((void)ball(identity_element(), 4, sys, 10), Error);
}

TEST_CASE("ideal balls") {
  auto sys = z_list({1});
  CHECK(ideal_ball({}, 3, sys).empty());
  auto single = ideal_ball({zint(7)}, 2, sys);
  CHECK(single == ball(zint(7), 2, sys));
  auto got = ideal_ball({zint(0), zint(10)}, 1, sys);
  std::vector<Element> want{zint(-1), zint(0), zint(1), zint(9), zint(10), zint(11)};
  std::sort(want.begin(), want.end(), element_less);
  CHECK(got == want);
}

TEST_CASE("entourage composition: nested ideal balls add radii") {
  auto sys = z_list({1, 3});
  for (std::uint32_t n = 0; n <= 2; ++n)
    for (std::uint32_t m = 0; m <= 2; ++m) {
      auto inner = ideal_ball({zint(2)}, n, sys);
      CHECK(ideal_ball(inner, m, sys) == ideal_ball({zint(2)}, n + m, sys));
    }
}

TEST_CASE("ball symmetry under negation") {
  auto sys = z_powers(3, 5);
  auto b = ball(identity_element(), 3, sys);
  std::vector<Element> negated;
  for (const auto& e : b) negated.push_back(neg(e, sys.spec()));
  std::sort(negated.begin(), negated.end(), element_less);
  CHECK(b == negated);
}

TEST_CASE("sumset-enumeration balls equal BFS Cayley balls") {
  auto sys2 = z2_basis(6);
  auto sys3 = z_powers(3, 5);
  std::mt19937 rng(3);
  auto w2 = enumerate_window(sys2.spec(), support_shape({0, 1, 2, 3, 4, 5}));
  auto w3 = enumerate_window(integers_spec(), box_shape({{Int(-20), Int(20)}}));
  std::uniform_int_distribution<std::size_t> p2(0, w2.size() - 1), p3(0, w3.size() - 1);
  std::uniform_int_distribution<std::uint32_t> radius(0, 4);
  for (int it = 0; it < 25; ++it) {
    const auto n = radius(rng);
    const Element& x2 = w2.elements[p2(rng)];
    CHECK(ball(x2, n, sys2) == oracles::bfs_cayley_ball(x2, n, sys2));
    const Element& x3 = w3.elements[p3(rng)];
    CHECK(ball(x3, n, sys3) == oracles::bfs_cayley_ball(x3, n, sys3));
  }
}

TEST_CASE("metric axioms on random triples") {
  auto sys = z_powers(3, 6);
  auto w = enumerate_window(integers_spec(), box_shape({{Int(-30), Int(30)}}));
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
  for (int it = 0; it < 300; ++it) {
    const Element& x = w.elements[pick(rng)];
    const Element& y = w.elements[pick(rng)];
    const Element& z = w.elements[pick(rng)];
    auto dxy = word_distance(x, y, sys, 16);
    auto dyx = word_distance(y, x, sys, 16);
    auto dxz = word_distance(x, z, sys, 16);
    auto dyz = word_distance(y, z, sys, 16);
    auto d0 = word_distance(identity_element(), sub(x, y, sys.spec()), sys, 16);
    REQUIRE(dxy.value.has_value());
    REQUIRE(dyx.value.has_value());
    REQUIRE(dxz.value.has_value());
    REQUIRE(dyz.value.has_value());
    REQUIRE(d0.value.has_value());
    CHECK(*dxy.value == *dyx.value);
    CHECK(*dxy.value == *d0.value);
    CHECK((*dxy.value == 0) == (x == y));
    CHECK(*dxz.value <= *dxy.value + *dyz.value);
  }
}

TEST_CASE("sumset additivity") {
  auto sys = z_powers(2, 6);
  std::mt19937 rng(23);
  auto a2 = oracles::sumset_product(sys, 2);
  std::vector<Element> pool(a2.begin(), a2.end());
  std::sort(pool.begin(), pool.end(), element_less);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int it = 0; it < 100; ++it) {
    const Element& x = pool[pick(rng)];
    const Element& y = pool[pick(rng)];
    CHECK(in_sumset(add(x, y, sys.spec()), 4, sys));
  }
}

TEST_CASE("deepening and table lookups agree") {
  auto sys = z_powers(3, 6);
  auto w = enumerate_window(integers_spec(), box_shape({{Int(-40), Int(40)}}));
  for (const auto& x : w.elements) {
    auto via_table = word_distance(x, identity_element(), sys, 12);
    bool via_dfs_4 = sys.deepening_member(x, 4);
    REQUIRE(via_table.value.has_value());
    CHECK(via_dfs_4 == (*via_table.value <= 4));
  }
}

TEST_CASE("cover radius: line instances") {
  auto sys = z_list({1});
  auto r1 = cover_radius({zint(0), zint(10), zint(20)}, 1, sys, 12);
  REQUIRE_FALSE(r1.exceeded);
  CHECK(r1.radius == 10);
  CHECK(r1.centers == std::vector<Element>{zint(10)});

  auto r2 = cover_radius({zint(0), zint(1), zint(2), zint(3)}, 2, sys, 4);
  REQUIRE_FALSE(r2.exceeded);
  CHECK(r2.radius == 1);

  std::vector<Element> s{zint(0), zint(1), zint(2), zint(3)};
  auto r3 = cover_radius(s, 4, sys, 4);
  REQUIRE_FALSE(r3.exceeded);
  CHECK(r3.radius == 0);
  CHECK(r3.centers == s);
}

TEST_CASE("cover radius equals the brute-force oracle") {
  auto sysz = z_list({1});
  auto sys2 = z2_basis(5);
  auto w2 = enumerate_window(sys2.spec(), support_shape({0, 1, 2, 3, 4}));
  auto wz = enumerate_window(integers_spec(), box_shape({{Int(-10), Int(10)}}));
  std::mt19937 rng(31);
  for (int it = 0; it < 20; ++it) {
    const bool use_z = it % 2 == 0;
    const auto& sys = use_z ? sysz : sys2;
    const auto& w = use_z ? wz : w2;
    std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
    std::uniform_int_distribution<std::size_t> sized(1, 6);
    std::uniform_int_distribution<std::uint32_t> kpick(1, 3);
    std::vector<Element> s;
    for (std::size_t i = sized(rng); i-- > 0;) s.push_back(w.elements[pick(rng)]);
    const std::uint32_t k = kpick(rng);
    const std::uint32_t max_r = 3;
    auto got = cover_radius(s, k, sys, max_r);
    auto want = oracles::brute_k_center(s, k, sys, max_r);
    CHECK(got.exceeded == want.exceeded);
    if (!got.exceeded) {
      CHECK(got.radius == want.radius);
      CHECK(got.centers == want.centers);
    }
  }
}

TEST_CASE("cover radius is non-increasing in k") {
  auto sys = z_list({1});
  std::vector<Element> s{zint(-6), zint(0), zint(3), zint(9), zint(10)};
  std::uint32_t prev = std::numeric_limits<std::uint32_t>::max();
  for (std::uint32_t k = 1; k <= 5; ++k) {
    auto r = cover_radius(s, k, sys, 10);
    REQUIRE_FALSE(r.exceeded);
    CHECK(r.radius <= prev);
    prev = r.radius;
  }
  CHECK(prev == 0);
}

TEST_CASE("cover radius reports exceeds-bound") {
  auto sys = z_list({1});
  auto r = cover_radius({zint(0), zint(10)}, 1, sys, 2);
  CHECK(r.exceeded);
}

TEST_CASE("merge sequences") {
  auto a0 = zint(1), a1 = zint(2);
  CHECK(merge_sequences({{a0, a1}}) == std::vector<Element>{a0, a1});
  auto x0 = zint(10), x1 = zint(11), y0 = zint(20), y1 = zint(21);
  CHECK(merge_sequences({{x0, x1}, {y0, y1}}) == std::vector<Element>{x0, y0, x1, y1});
  auto y2 = zint(22);
  CHECK(merge_sequences({{x0}, {y0, y1, y2}}) == std::vector<Element>{x0, y0, y1, y2});
  CHECK_THROWS_AS((void)merge_sequences({}), Error);
}

TEST_CASE("merge keeps inputs as ordered subsequences") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> len(1, 6), val(-50, 50), cnt(1, 4);
  for (int it = 0; it < 50; ++it) {
    std::vector<std::vector<Element>> seqs;
    for (int s = cnt(rng); s-- > 0;) {
      std::vector<Element> seq;
      for (int i = len(rng); i-- > 0;) seq.push_back(zint(val(rng)));
      seqs.push_back(std::move(seq));
    }
    auto merged = merge_sequences(seqs);
    std::size_t total = 0;
    for (const auto& s : seqs) total += s.size();
    CHECK(merged.size() == total);
    for (const auto& s : seqs) {
      // order-preserving injection search
      std::size_t pos = 0;
      for (const auto& e : s) {
        while (pos < merged.size() && !(merged[pos] == e)) ++pos;
        REQUIRE(pos < merged.size());
        ++pos;
      }
    }
  }
}
