#include "doctest.h"

#include <random>

#include "coarselab/hamming.hpp"
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
  std::vector<Element> gens;
  Int p = 1;
  for (std::uint32_t i = 0; i < count; ++i) {
    gens.push_back(int_element(p));
    p *= base;
  }
  return GeneratorSystem(integers_spec(), std::move(gens));
}

}  // namespace

TEST_CASE("hamming distance basics") {
  CHECK(hamming_distance({1, 2, 3}, {2, 3, 4}) == 2);
  CHECK(hamming_distance({}, {1, 5, 9}) == 3);
  CHECK(hamming_distance({0, 4}, {0, 4}) == 0);
}

TEST_CASE("hamming distance is a translation-invariant metric") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coin(0, 1);
  auto sample = [&] {
    HammingPoint p;
    for (std::uint32_t i = 0; i < 10; ++i)
      if (coin(rng)) p.push_back(i);
    return p;
  };
  auto symdiff = [](const HammingPoint& a, const HammingPoint& b) {
    HammingPoint out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
  };
  for (int it = 0; it < 200; ++it) {
    auto f = sample(), h = sample(), k = sample();
    CHECK(hamming_distance(f, h) == hamming_distance(h, f));
    CHECK((hamming_distance(f, h) == 0) == (f == h));
    CHECK(hamming_distance(f, k) <= hamming_distance(f, h) + hamming_distance(h, k));
    CHECK(hamming_distance(f, h) == hamming_distance(symdiff(f, k), symdiff(h, k)));
  }
}

TEST_CASE("canonical bijection and inverse") {
  auto spec = bounded_sum_spec(2, 8);
  auto e = [&](std::uint32_t i) { return basis_element(i, spec); };
  CHECK(support_of(add(e(0), e(2), spec), spec) == HammingPoint{0, 2});
  CHECK(support_of(identity_element(), spec) == HammingPoint{});
  CHECK(element_from_support({1, 3}, spec) == add(e(1), e(3), spec));
  try {
    (void)support_of(zint(1), integers_spec());
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::wrong_group);
  }
}

TEST_CASE("canonical bijection is an isometry on Z2 windows") {
  auto sys = z2_basis(6);
  auto w = enumerate_window(sys.spec(), support_shape({0, 1, 2, 3, 4, 5}));
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
  for (int it = 0; it < 300; ++it) {
    const Element& x = w.elements[pick(rng)];
    const Element& y = w.elements[pick(rng)];
    auto d = word_distance(x, y, sys, 6);
    REQUIRE(d.value.has_value());
    CHECK(*d.value ==
          hamming_distance(support_of(x, sys.spec()), support_of(y, sys.spec())));
    CHECK(element_from_support(support_of(x, sys.spec()), sys.spec()) == x);
  }
}

TEST_CASE("fs_strict_check examples") {
  auto z2 = bounded_sum_spec(2, 4);
  std::vector<Element> basis{basis_element(0, z2), basis_element(1, z2), basis_element(2, z2)};
  CHECK(fs_strict_check(basis, z2).ok);

  auto z = integers_spec();
  auto bad = fs_strict_check({zint(1), zint(2), zint(3)}, z);
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->f == HammingPoint{0, 1});
  CHECK(bad.witness->h == HammingPoint{2});

  CHECK(fs_strict_check({zint(1), zint(2), zint(4)}, z).ok);
}

TEST_CASE("fs strictness implies injectivity of the subset-sum map") {
  auto z = integers_spec();
  std::vector<Element> b{zint(1), zint(2), zint(4), zint(8)};
  REQUIRE(fs_strict_check(b, z).ok);
  EmbeddingCertificate cert;
  cert.b_seq = b;
  std::unordered_set<Element, ElementHash> images;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    HammingPoint h;
    for (std::uint32_t i = 0; i < 4; ++i)
      if ((mask >> i) & 1u) h.push_back(i);
    images.insert(fs_map(h, cert, z));
  }
  CHECK(images.size() == 16);
}

TEST_CASE("signed sum condition examples") {
  auto pow3 = z_powers(3, 6);
  // single nonzero term reduces to ±b ∉ A_0 = {0}
  CHECK(signed_sum_condition_check({zint(7)}, pow3).ok);
  CHECK(signed_sum_condition_check({zint(1), zint(3)}, pow3).ok);

  auto pow2 = z_powers(2, 6);
  auto bad = signed_sum_condition_check({zint(1), zint(2)}, pow2);
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->subset == std::vector<std::uint32_t>{0, 1});
  CHECK(bad.violation->signs == std::vector<int>{-1, 1});
  CHECK(bad.violation->k == 1);
  CHECK(bad.violation->sum == zint(1));
}

TEST_CASE("greedy_select on the Z2 basis sequence") {
  auto sys = z2_basis(8);
  auto cert = greedy_select(sys.generators(), sys, 6, 8);
  REQUIRE(cert.b_seq.size() == 6);
  for (std::uint32_t i = 0; i < 6; ++i) {
    CHECK(cert.b_seq[i] == basis_element(i, sys.spec()));
    CHECK(cert.source_indices[i] == i);
  }
  CHECK(cert.verified);
}

TEST_CASE("greedy_select on powers of three") {
  auto sys = z_powers(3, 9);
  auto cert = greedy_select(sys.generators(), sys, 4, 9);
  REQUIRE(cert.b_seq.size() == 4);
  CHECK(cert.b_seq == std::vector<Element>{zint(1), zint(3), zint(9), zint(27)});
  CHECK(cert.source_indices == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK(cert.verified);
}

TEST_CASE("greedy_select exhausts on a constant sequence") {
  auto sys = GeneratorSystem(integers_spec(), {zint(1)});
  std::vector<Element> ones(6, zint(1));
  try {
    (void)greedy_select(ones, sys, 2, 6);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::scan_exhausted);
    CHECK(std::string(e.what()).find("condition-1") != std::string::npos);
  }
}

TEST_CASE("fs_map basics") {
  auto z = integers_spec();
  EmbeddingCertificate cert;
  cert.b_seq = {zint(1), zint(3), zint(9)};
  CHECK(fs_map({}, cert, z) == identity_element());
  CHECK(fs_map({0, 2}, cert, z) == zint(10));
  CHECK_THROWS_AS((void)fs_map({5}, cert, z), Error);

  auto z2 = bounded_sum_spec(2, 4);
  EmbeddingCertificate c2;
  c2.b_seq = {basis_element(0, z2), basis_element(1, z2)};
  CHECK(fs_map({0, 1}, c2, z2) == add(basis_element(0, z2), basis_element(1, z2), z2));
}

TEST_CASE("verify_isometric_embedding on verified certificates") {
  auto sys2 = z2_basis(8);
  auto cert2 = greedy_select(sys2.generators(), sys2, 6, 8);
  auto rep2 = verify_isometric_embedding(cert2, sys2, 6);
  CHECK(rep2.verdict == EmbedVerdict::verified);
  REQUIRE(rep2.mu.size() == 7);
  for (std::uint32_t i = 0; i <= 6; ++i) CHECK(rep2.mu[i] == i);

  auto sys3 = z_powers(3, 9);
  auto cert3 = greedy_select(sys3.generators(), sys3, 4, 9);
  auto rep3 = verify_isometric_embedding(cert3, sys3, 4);
  CHECK(rep3.verdict == EmbedVerdict::verified);

  // support bound 0 is vacuous
  auto rep0 = verify_isometric_embedding(cert3, sys3, 0);
  CHECK(rep0.verdict == EmbedVerdict::verified);
  CHECK(rep0.mu == std::vector<std::uint32_t>{0});
}

TEST_CASE("signed condition implies isometry at every support bound") {
  auto sys = z_powers(3, 9);
  auto cert = greedy_select(sys.generators(), sys, 4, 9);
  REQUIRE(cert.signed_check.ok);
  for (std::uint32_t s = 0; s <= 4; ++s) {
    auto rep = verify_isometric_embedding(cert, sys, s);
    CHECK(rep.verdict == EmbedVerdict::verified);
    for (std::size_t i = 1; i < rep.mu.size(); ++i) CHECK(rep.mu[i - 1] <= rep.mu[i]);
  }
}

TEST_CASE("verify flags a broken certificate") {
  auto sys = z_powers(2, 6);
  EmbeddingCertificate cert;
  cert.b_seq = {zint(1), zint(2)};  // -1 + 2 = 1 lands in A_1
  auto rep = verify_isometric_embedding(cert, sys, 2);
  CHECK(rep.verdict == EmbedVerdict::violated);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->expected != *rep.violation->got);
}
