#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarselab/generators.hpp"
#include "coarselab/group.hpp"

namespace coarselab {

/// A finite cover of a window split into color classes: candidate witness for
/// the asymptotic-dimension definition at separation scale r and boundedness
/// radius D.
struct CoverWitness {
  Window window;
  GeneratorSystem sys;
  std::vector<std::vector<std::vector<Element>>> classes;
  std::uint32_t r = 0;
  std::uint32_t D = 0;
};

enum class WitnessViolationKind { empty_set, cover, boundedness, separation };

const char* to_string(WitnessViolationKind kind);

struct WitnessViolation {
  WitnessViolationKind kind;
  std::string detail;
  std::optional<Element> element;                    // uncovered point, for cover violations
  std::optional<std::pair<std::size_t, std::size_t>> location;  // (class, set)
  std::optional<std::size_t> other_set;              // second set of a separation violation
};

struct WitnessVerdict {
  bool valid = false;
  std::optional<WitnessViolation> violation;
};

/// Ground truth for witnesses: cover, boundedness via cover_radius(S,1) ≤ D,
/// and same-class halo disjointness with balls taken in the full group.
WitnessVerdict verify_witness(const CoverWitness& w);

/// Greedy subcover by residual coverage, first-fit coloring on the halo
/// conflict graph; D is the largest 1-center radius of a selected set.
CoverWitness greedy_cover(const Window& window, const GeneratorSystem& sys,
                          const std::vector<std::vector<Element>>& candidates, std::uint32_t r);

struct MinClassesResult {
  std::uint32_t classes = 0;
  CoverWitness witness;
  bool exact = false;
  std::uint64_t nodes = 0;
};

/// Exact minimum class count over subcovers drawn from the candidates, by
/// branch and bound; on budget exhaustion returns the greedy upper bound
/// flagged inexact.
MinClassesResult exact_min_classes(const Window& window, const GeneratorSystem& sys,
                                   const std::vector<std::vector<Element>>& candidates,
                                   std::uint32_t r, std::uint64_t budget = 1'000'000);

struct DimProfileRow {
  std::uint32_t r = 0;
  std::uint32_t D = 0;
  std::uint32_t greedy_classes = 0;
  std::optional<std::uint32_t> exact_classes;
  bool exact = false;
  CoverWitness witness;
};

struct DimProfile {
  std::vector<DimProfileRow> rows;
};

using CandidateRule = std::function<std::vector<std::vector<Element>>(std::uint32_t)>;

/// Scale-dimension profile: for each r, build candidates, run greedy_cover
/// and (within budget) exact_min_classes.
DimProfile dim_profile(const Window& window, const GeneratorSystem& sys,
                       const CandidateRule& rule, const std::vector<std::uint32_t>& r_list,
                       std::uint64_t budget = 1'000'000);

// Candidate families. Sets are clipped to the window and deduplicated.
std::vector<std::vector<Element>> singleton_candidates(const Window& window);
std::vector<std::vector<Element>> ball_candidates(const Window& window,
                                                  const GeneratorSystem& sys,
                                                  std::uint32_t radius);
std::vector<std::vector<Element>> brick_candidates(const Window& window, std::uint32_t side,
                                                   std::uint32_t stride);

}  // namespace coarselab
