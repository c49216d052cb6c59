#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarselab/generators.hpp"
#include "coarselab/group.hpp"

namespace coarselab {

using Rat = boost::multiprecision::cpp_rational;

/// A total function on a window; values parallel to window.elements.
/// Binary functions are the special case with range {0,1}.
struct WindowFunction {
  Window window;
  std::vector<Rat> values;

  const Rat& at(std::size_t idx) const { return values[idx]; }
  bool is_binary() const;
  void validate() const;  // one value per window element
};

struct OscillationRow {
  Element x;
  Rat diam;
};

struct OscillationTable {
  std::uint32_t r = 0;
  std::uint32_t margin = 0;
  std::vector<OscillationRow> rows;  // interior points, window enumeration order
  Rat max_diam = 0;
};

/// Per-point diameter of f over ball(x, r) for every interior x (those whose
/// radius-margin ball stays inside the window). Throws empty-interior when
/// the margin exhausts the window.
OscillationTable oscillation(const WindowFunction& f, std::uint32_t r, const GeneratorSystem& sys,
                             std::uint32_t interior_margin);

/// Least m such that the binary f is constant on window ∖ (identity + A_m)
/// and every interior point outside A_m has a constant radius-r ball; none if
/// no non-vacuous m works within the window.
std::optional<std::uint32_t> eventual_constancy_index(const WindowFunction& f, std::uint32_t r,
                                                      const GeneratorSystem& sys);

struct ClassifyConfig {
  std::vector<std::uint32_t> r_list{1, 2};
  std::vector<std::uint32_t> excisions{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<std::pair<std::uint32_t, std::vector<Element>>> stages;  // (n, F); default F={e}, n=0..8
  Rat modulus_bound = 64;
};

struct StageRow {
  std::uint32_t n = 0;
  std::size_t f_size = 0;
  std::size_t stage_size = 0;  // |(F + A_n) ∩ window|
  Rat sup_abs = 0;
};

struct MacroRow {
  std::uint32_t r = 0;
  Rat modulus = 0;      // least uniform bound on the interior oscillation
  bool within_bound = false;
};

struct EmuRow {
  std::uint32_t r = 0;
  std::uint32_t m = 0;
  Rat osc = 0;
  std::size_t scored = 0;  // interior points outside A_m
};

struct ClassReport {
  std::uint32_t margin = 0;
  std::vector<std::pair<std::uint32_t, Rat>> osc;  // (r, max interior diameter)
  std::vector<StageRow> stages;
  bool unbounded_trend = false;
  std::vector<MacroRow> macro;
  std::optional<std::uint32_t> macro_failure_r;
  std::vector<EmuRow> emu;
  std::vector<std::pair<std::uint32_t, std::optional<std::uint32_t>>> so_index;  // per r
  Rat modulus_bound = 64;
};

/// Staged evidence for the four function classes: bornologous growth across
/// ideal-base stages, macro-uniform moduli per scale, excised oscillation
/// tables, and slowly-oscillating decay indices.
ClassReport classify(const WindowFunction& f, const GeneratorSystem& sys,
                     const ClassifyConfig& cfg);

}  // namespace coarselab
