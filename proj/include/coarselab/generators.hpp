#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "coarselab/group.hpp"

namespace coarselab {

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

/// Layered enumeration of the sumsets A_0 ⊆ A_1 ⊆ …: layers[d] holds the
/// elements whose exact word norm is d. `exhausted` means the generated
/// subgroup has been enumerated completely (no layer can grow further).
struct SumsetTable {
  std::vector<std::vector<Element>> layers;
  std::unordered_map<Element, std::uint32_t, ElementHash> norm;
  bool exhausted = false;

  std::uint32_t radius() const {
    return layers.empty() ? 0 : static_cast<std::uint32_t>(layers.size() - 1);
  }
  bool covers(std::uint32_t r) const { return exhausted || radius() >= r; }
  std::size_t size() const { return norm.size(); }
  std::optional<std::uint32_t> norm_of(const Element& e) const;
  /// Total size of A_r within this table (all of it when exhausted early).
  std::size_t size_up_to(std::uint32_t r) const;
};

/// Truncated generator sequence (a_0, …, a_{N-1}) with the symmetric alphabet
/// {0} ∪ {±a_n}. Distance and membership answers are exact for the truncated
/// Cayley graph, a sound under-approximation of the full sequence.
class GeneratorSystem {
 public:
  GeneratorSystem() = default;
  GeneratorSystem(GroupSpec spec, std::vector<Element> generators);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Element>& generators() const { return generators_; }

  /// Grows (and caches) the sumset layering to the given radius. Throws
  /// ball-too-large when |A_radius| would exceed cap.
  std::shared_ptr<const SumsetTable> ensure_table(std::uint32_t radius, std::size_t cap) const;
  /// Same, but returns nullptr instead of throwing on the cap.
  std::shared_ptr<const SumsetTable> try_table(std::uint32_t radius, std::size_t cap) const;
  std::shared_ptr<const SumsetTable> current_table() const;

  /// Exact test that t is a sum of at most `budget` signed generators
  /// (iterative-deepening workhorse; no tables involved).
  bool deepening_member(const Element& t, std::uint32_t budget) const;

 private:
  struct Cache;
  GroupSpec spec_;
  std::vector<Element> generators_;
  std::shared_ptr<Cache> cache_;
};

struct DistanceResult {
  std::optional<std::uint32_t> value;
  std::uint32_t search_bound = 0;

  bool exceeds_bound() const { return !value.has_value(); }
};

/// Least r ≤ max_r with x - y a sum of r elements of {±a_n}; exceeds-bound
/// otherwise. Exact: cached norm-table lookup when the layering fits the
/// cap, else iterative deepening (r ≤ 6) / meet-in-the-middle over two
/// half-radius tables.
DistanceResult word_distance(const Element& x, const Element& y, const GeneratorSystem& sys,
                             std::uint32_t max_r);

/// x ∈ A_n, i.e. word_distance(x, identity) ≤ n.
bool in_sumset(const Element& x, std::uint32_t n, const GeneratorSystem& sys);

/// A_n + x in canonical order. Throws ball-too-large past cap.
std::vector<Element> ball(const Element& x, std::uint32_t n, const GeneratorSystem& sys,
                          std::size_t cap = kDefaultBallCap);

/// F + A_n = ∪_{f∈F} ball(f, n), the generic bounded set of the ideal.
std::vector<Element> ideal_ball(const std::vector<Element>& f, std::uint32_t n,
                                const GeneratorSystem& sys, std::size_t cap = kDefaultBallCap);

struct CoverRadiusResult {
  bool exceeded = false;
  std::uint32_t radius = 0;
  std::vector<Element> centers;
  std::uint32_t search_bound = 0;
};

/// Exact k-center over candidate centers within max_r of S: minimal radius,
/// then fewest centers, then lexicographically least center set.
CoverRadiusResult cover_radius(const std::vector<Element>& s, std::uint32_t k,
                               const GeneratorSystem& sys, std::uint32_t max_r);

/// Round-robin interleaving; every input occurs as a subsequence, in order.
std::vector<Element> merge_sequences(const std::vector<std::vector<Element>>& seqs);

}  // namespace coarselab
