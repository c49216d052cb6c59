#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarselab/generators.hpp"
#include "coarselab/group.hpp"

namespace coarselab {

/// A point of the Hamming space H = [ω]^{<ω}: a strictly increasing finite
/// list of naturals.
using HammingPoint = std::vector<std::uint32_t>;

std::uint64_t hamming_distance(const HammingPoint& f, const HammingPoint& h);

/// Canonical bijection for ⊕Z_2: element ↦ support. Throws wrong-group for
/// any other group.
HammingPoint support_of(const Element& x, const GroupSpec& spec);
Element element_from_support(const HammingPoint& h, const GroupSpec& spec);

struct FsWitness {
  HammingPoint f;
  HammingPoint h;
};

struct FsCheckResult {
  bool ok = false;
  std::optional<FsWitness> witness;  // a colliding subset pair when !ok
};

/// All 2^|b| subset sums pairwise distinct? |b| ≤ 24.
FsCheckResult fs_strict_check(const std::vector<Element>& b, const GroupSpec& spec);

struct SignedSumViolation {
  std::vector<std::uint32_t> subset;  // i_0 < … < i_k
  std::vector<int> signs;             // ±1 per subset position
  std::uint32_t k = 0;                // the signed sum landed in A_k
  Element sum;
};

struct SignedSumResult {
  bool ok = false;
  std::optional<SignedSumViolation> violation;
};

/// For every subset {i_0<…<i_k} and every sign vector the signed sum stays
/// outside A_k. |b| ≤ 14.
SignedSumResult signed_sum_condition_check(const std::vector<Element>& b,
                                           const GeneratorSystem& sys);

struct EmbeddingCertificate {
  std::vector<Element> b_seq;
  std::vector<std::uint32_t> source_indices;
  std::uint32_t support_bound = 0;  // all subset pairs over {0..support_bound-1} were checked
  bool verified = false;
  FsCheckResult fs_check;
  SignedSumResult signed_check;
};

/// Greedy subsequence selection: first-accept scan enforcing distinctness of
/// subset sums incrementally plus the signed-sum exclusion for every prefix
/// subset; the full output is re-validated by both global checkers.
EmbeddingCertificate greedy_select(const std::vector<Element>& a, const GeneratorSystem& sys,
                                   std::uint32_t target_len, std::uint32_t scan_limit);

/// f(H) = Σ_{i∈H} b_i.
Element fs_map(const HammingPoint& h, const EmbeddingCertificate& cert, const GroupSpec& spec);

enum class EmbedVerdict { verified, violated, inconclusive };

const char* to_string(EmbedVerdict v);

struct EmbeddingViolation {
  HammingPoint f;
  HammingPoint h;
  std::uint64_t expected = 0;                // |F △ H|
  std::optional<std::uint32_t> got;          // empty when the search bound was exceeded
};

struct EmbeddingReport {
  EmbedVerdict verdict = EmbedVerdict::inconclusive;
  std::optional<EmbeddingViolation> violation;
  std::vector<std::uint32_t> mu;  // mu[i] = max word distance over pairs at Hamming distance ≤ i
  std::uint32_t support_bound = 0;
};

/// Checks word_distance(f(F), f(H)) = |F △ H| for all F, H over
/// {0..support_bound-1} and reports the macro-uniformity modulus table.
EmbeddingReport verify_isometric_embedding(const EmbeddingCertificate& cert,
                                           const GeneratorSystem& sys,
                                           std::uint32_t support_bound);

}  // namespace coarselab
