#include "doctest.h"

#include <random>

#include "coarselab/functions.hpp"
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

GeneratorSystem z_unit() { return GeneratorSystem(integers_spec(), {zint(1)}); }

Window cube_window(const GroupSpec& spec, std::uint32_t n) {
  std::vector<std::uint32_t> coords;
  for (std::uint32_t i = 0; i < n; ++i) coords.push_back(i);
  return enumerate_window(spec, support_shape(coords));
}

WindowFunction on_window(Window w, const std::function<Rat(const Element&)>& fn) {
  WindowFunction f;
  f.values.reserve(w.size());
  for (const Element& e : w.elements) f.values.push_back(fn(e));
  f.window = std::move(w);
  return f;
}

Rat support_size(const Element& e) { return Rat(static_cast<long>(e.support_size())); }

/// Definition-level reference for the eventual constancy index.
std::optional<std::uint32_t> brute_eci(const WindowFunction& f, std::uint32_t r,
                                       const GeneratorSystem& sys) {
  const Window& w = f.window;
  std::vector<std::optional<std::uint32_t>> norms(w.size());
  std::uint32_t max_norm = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    norms[i] = oracles::brute_distance(w.elements[i], identity_element(), sys, 64);
    if (norms[i]) max_norm = std::max(max_norm, **(&norms[i]));
  }
  auto ball_of = [&](const Element& x) { return oracles::bfs_cayley_ball(x, r, sys); };
  for (std::uint32_t m = 0; m <= max_norm; ++m) {
    std::vector<std::size_t> region;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!norms[i] || *norms[i] > m) region.push_back(i);
    if (region.empty()) continue;
    bool constant = true;
    for (std::size_t i : region)
      if (f.at(i) != f.at(region.front())) constant = false;
    bool osc_zero = true;
    for (std::size_t i : region) {
      auto b = ball_of(w.elements[i]);
      bool interior = std::all_of(b.begin(), b.end(),
                                  [&](const Element& e) { return w.contains(e); });
      if (!interior) continue;
      for (const Element& e : b)
        if (f.at(*w.position(e)) != f.at(i)) osc_zero = false;
    }
    if (constant && osc_zero) return m;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("oscillation of a constant function is zero") {
  auto sys = z2_basis(4);
  auto f = on_window(cube_window(sys.spec(), 4), [](const Element&) { return Rat(7); });
  auto table = oscillation(f, 1, sys, 1);
  for (const auto& row : table.rows) CHECK(row.diam == 0);
  CHECK(table.max_diam == 0);
  CHECK(oscillation(f, 0, sys, 0).max_diam == 0);
}

TEST_CASE("oscillation of the parity function is one at r=1") {
  auto sys = z2_basis(4);
  auto f = on_window(cube_window(sys.spec(), 4), [](const Element& e) {
    return Rat(static_cast<long>(e.support_size() % 2));
  });
  auto table = oscillation(f, 1, sys, 1);
  CHECK(table.rows.size() == 16);
  for (const auto& row : table.rows) CHECK(row.diam == 1);
}

TEST_CASE("oscillation of x on Z at r=2 is four") {
  auto sys = z_unit();
  auto w = enumerate_window(integers_spec(), box_shape({{Int(-10), Int(10)}}));
  auto f = on_window(w, [](const Element& e) {
    return e.is_identity() ? Rat(0) : Rat(e.entries[0].second);
  });
  auto table = oscillation(f, 2, sys, 2);
  for (const auto& row : table.rows) CHECK(row.diam == 4);
}

TEST_CASE("oscillation guards its margin and interior") {
  auto sys = z_unit();
  auto w = enumerate_window(integers_spec(), box_shape({{Int(-2), Int(2)}}));
  auto f = on_window(w, [](const Element&) { return Rat(0); });
  CHECK_THROWS_AS((void)oscillation(f, 2, sys, 1), Error);
  try {
    (void)oscillation(f, 3, sys, 3);  // no point of [-2,2] has its 3-ball inside
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_interior);
  }
}

TEST_CASE("eventual constancy: constant function has index zero") {
  auto sys = z2_basis(4);
  auto f = on_window(cube_window(sys.spec(), 4), [](const Element&) { return Rat(1); });
  CHECK(eventual_constancy_index(f, 1, sys) == 0);
}

TEST_CASE("eventual constancy: coordinate indicator never settles") {
  auto sys = z2_basis(4);
  auto f = on_window(cube_window(sys.spec(), 4), [](const Element& e) {
    const bool has0 = !e.entries.empty() && e.entries.front().first == 0;
    return Rat(has0 ? 1 : 0);
  });
  CHECK_FALSE(eventual_constancy_index(f, 1, sys).has_value());
}

TEST_CASE("eventual constancy: point indicator of e0+e1 settles at m=3") {
  auto sys = z2_basis(4);
  auto point = add(basis_element(0, sys.spec()), basis_element(1, sys.spec()), sys.spec());
  auto f = on_window(cube_window(sys.spec(), 4),
                     [&](const Element& e) { return Rat(e == point ? 1 : 0); });
  auto idx = eventual_constancy_index(f, 1, sys);
  REQUIRE(idx.has_value());
  CHECK(*idx == 3);
  CHECK(brute_eci(f, 1, sys) == idx);
}

TEST_CASE("eventual constancy matches the definitional oracle on random binary functions") {
  auto sys = z2_basis(3);
  auto w = cube_window(sys.spec(), 3);
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    WindowFunction f;
    f.window = w;
    for (std::size_t i = 0; i < 8; ++i) f.values.push_back(Rat((mask >> i) & 1u));
    CHECK(eventual_constancy_index(f, 1, sys) == brute_eci(f, 1, sys));
  }
}

TEST_CASE("eventual constancy index is rejected for non-binary functions") {
  auto sys = z2_basis(3);
  auto f = on_window(cube_window(sys.spec(), 3), support_size);
  CHECK_THROWS_AS((void)eventual_constancy_index(f, 1, sys), Error);
}

TEST_CASE("classify: support size has uniform modulus 2r") {
  auto sys = z2_basis(8);
  auto f = on_window(cube_window(sys.spec(), 8), support_size);
  ClassifyConfig cfg;
  cfg.r_list = {1, 2};
  auto report = classify(f, sys, cfg);
  REQUIRE(report.macro.size() == 2);
  // a radius-r ball spans support sizes s-r .. s+r
  CHECK(report.macro[0].modulus == 2);
  CHECK(report.macro[1].modulus == 4);
  CHECK(report.macro[0].within_bound);
  CHECK_FALSE(report.macro_failure_r.has_value());
}

TEST_CASE("classify: exponential support blows the modulus but stays stage-bounded") {
  auto sys = z2_basis(10);
  auto f = on_window(cube_window(sys.spec(), 10), [](const Element& e) {
    Rat v = 1;
    for (std::size_t i = 0; i < e.support_size(); ++i) v *= 2;
    return v;
  });
  ClassifyConfig cfg;
  cfg.r_list = {1};
  auto report = classify(f, sys, cfg);
  CHECK(report.macro_failure_r == 1);
  CHECK(report.unbounded_trend);
  // every ideal-base stage is still a bounded set with a finite sup
  for (const auto& row : report.stages) CHECK(row.sup_abs <= 1024);
  for (std::size_t i = 1; i < report.stages.size(); ++i)
    CHECK(report.stages[i - 1].sup_abs <= report.stages[i].sup_abs);
}

TEST_CASE("classify: f(x)=x on Z is macro-uniform with modulus 2r, not slowly oscillating") {
  auto sys = z_unit();
  auto w = enumerate_window(integers_spec(), box_shape({{Int(-40), Int(40)}}));
  auto f = on_window(w, [](const Element& e) {
    return e.is_identity() ? Rat(0) : Rat(e.entries[0].second);
  });
  ClassifyConfig cfg;
  cfg.r_list = {1, 2, 3};
  auto report = classify(f, sys, cfg);
  for (const auto& row : report.macro) {
    CHECK(row.modulus == 2 * row.r);
    CHECK(row.within_bound);
  }
  for (const auto& [r, m] : report.so_index) CHECK_FALSE(m.has_value());
  CHECK(report.unbounded_trend);
}

TEST_CASE("classify: point indicator is slowly oscillating with index 3 at r=1") {
  auto sys = z2_basis(4);
  auto point = add(basis_element(0, sys.spec()), basis_element(1, sys.spec()), sys.spec());
  auto f = on_window(cube_window(sys.spec(), 4),
                     [&](const Element& e) { return Rat(e == point ? 1 : 0); });
  ClassifyConfig cfg;
  cfg.r_list = {1};
  auto report = classify(f, sys, cfg);
  REQUIRE(report.so_index.size() == 1);
  CHECK(report.so_index[0].second == 3);
}

TEST_CASE("oscillation summary is non-decreasing in r") {
  auto sys = z2_basis(5);
  auto w = cube_window(sys.spec(), 5);
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> val(0, 5);
  for (int it = 0; it < 10; ++it) {
    auto f = on_window(w, [&](const Element&) { return Rat(val(rng)); });
    ClassifyConfig cfg;
    cfg.r_list = {0, 1, 2, 3};
    auto report = classify(f, sys, cfg);
    CHECK(report.osc.front().second == 0);
    for (std::size_t i = 1; i < report.osc.size(); ++i)
      CHECK(report.osc[i - 1].second <= report.osc[i].second);
  }
}

TEST_CASE("classify is translation invariant") {
  auto sys = z_unit();
  auto w1 = enumerate_window(integers_spec(), box_shape({{Int(-8), Int(4)}}));
  auto w2 = enumerate_window(integers_spec(), box_shape({{Int(-5), Int(7)}}));
  const Int shift = 3;  // w2 = w1 + 3
  auto base = [](const Int& v) { return Rat(v * v - 2 * v); };
  auto f1 = on_window(w1, [&](const Element& e) {
    return base(e.is_identity() ? Int(0) : e.entries[0].second);
  });
  auto f2 = on_window(w2, [&](const Element& e) {
    return base((e.is_identity() ? Int(0) : e.entries[0].second) - shift);
  });
  ClassifyConfig cfg;
  cfg.r_list = {1, 2};
  auto r1 = classify(f1, sys, cfg);
  auto r2 = classify(f2, sys, cfg);
  REQUIRE(r1.osc.size() == r2.osc.size());
  for (std::size_t i = 0; i < r1.osc.size(); ++i) CHECK(r1.osc[i].second == r2.osc[i].second);
  for (std::size_t i = 0; i < r1.macro.size(); ++i)
    CHECK(r1.macro[i].modulus == r2.macro[i].modulus);
}
