#include "coarselab/functions.hpp"

#include <algorithm>
#include <limits>

#include "coarselab/parallel.hpp"

namespace coarselab {

namespace {

constexpr std::uint32_t kInfDist = std::numeric_limits<std::uint32_t>::max();

/// Interior flags: x is interior when its radius-margin ball stays inside the
/// window.
std::vector<char> interior_flags(const Window& w, const GeneratorSystem& sys,
                                 std::uint32_t margin) {
  std::vector<char> flags(w.size(), 1);
  if (margin == 0) return flags;
  auto tbl = sys.ensure_table(margin, kDefaultBallCap);
  const std::size_t top = std::min<std::size_t>(tbl->layers.size(), margin + 1);
  parallel_chunks(w.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t d = 1; d < top && flags[i]; ++d)
        for (const Element& u : tbl->layers[d])
          if (!w.contains(add(w.elements[i], u, sys.spec()))) {
            flags[i] = 0;
            break;
          }
    }
  });
  return flags;
}

/// Diameter of f over ball(x, r) ∩ window.
Rat ball_diameter(const WindowFunction& f, std::size_t idx, std::uint32_t r,
                  const GeneratorSystem& sys, const SumsetTable& tbl) {
  const Element& x = f.window.elements[idx];
  Rat lo = f.at(idx), hi = f.at(idx);
  const std::size_t top = std::min<std::size_t>(tbl.layers.size(), static_cast<std::size_t>(r) + 1);
  for (std::size_t d = 1; d < top; ++d)
    for (const Element& u : tbl.layers[d]) {
      auto pos = f.window.position(add(x, u, sys.spec()));
      if (!pos) continue;
      const Rat& v = f.at(*pos);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  return hi - lo;
}

/// Word norms of window elements, growing the table until every element is
/// found or growth stalls (cap or exhaustion). Unreachable points get kInfDist.
std::vector<std::uint32_t> window_norms(const Window& w, const GeneratorSystem& sys) {
  std::vector<std::uint32_t> norms(w.size(), kInfDist);
  std::uint32_t radius = 4;
  for (;;) {
    auto tbl = sys.try_table(radius, kDefaultBallCap);
    if (!tbl) tbl = sys.current_table();
    std::size_t missing = 0;
    if (tbl) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto d = tbl->norm_of(w.elements[i]);
        norms[i] = d ? *d : kInfDist;
        if (!d) ++missing;
      }
      if (missing == 0 || tbl->exhausted || !tbl->covers(radius)) break;
    } else {
      break;
    }
    if (radius > (1u << 12)) break;
    radius *= 2;
  }
  return norms;
}

}  // namespace

bool WindowFunction::is_binary() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rat& v) { return v == 0 || v == 1; });
}

void WindowFunction::validate() const {
  if (values.size() != window.size())
    fail(ErrorCode::invalid_config, "window function needs one value per window element");
}

OscillationTable oscillation(const WindowFunction& f, std::uint32_t r, const GeneratorSystem& sys,
                             std::uint32_t interior_margin) {
  f.validate();
  if (interior_margin < r)
    fail(ErrorCode::invalid_config, "interior margin must be at least the oscillation radius");
  OscillationTable table;
  table.r = r;
  table.margin = interior_margin;

  auto flags = interior_flags(f.window, sys, interior_margin);
  auto tbl = sys.ensure_table(r, kDefaultBallCap);

  std::vector<Rat> diams(f.window.size(), Rat(0));
  parallel_chunks(f.window.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i)
      if (flags[i]) diams[i] = ball_diameter(f, i, r, sys, *tbl);
  });

  for (std::size_t i = 0; i < f.window.size(); ++i)
    if (flags[i]) {
      table.rows.push_back({f.window.elements[i], diams[i]});
      if (diams[i] > table.max_diam) table.max_diam = diams[i];
    }
  if (table.rows.empty())
    fail(ErrorCode::empty_interior, "no window point has its ball inside the window");
  return table;
}

std::optional<std::uint32_t> eventual_constancy_index(const WindowFunction& f, std::uint32_t r,
                                                      const GeneratorSystem& sys) {
  f.validate();
  if (!f.is_binary())
    fail(ErrorCode::invalid_config, "eventual constancy index is defined for binary functions");

  const Window& w = f.window;
  auto norms = window_norms(w, sys);
  auto flags = interior_flags(w, sys, r);
  auto tbl = sys.ensure_table(r, kDefaultBallCap);

  std::vector<char> ball_constant(w.size(), 1);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (flags[i]) ball_constant[i] = ball_diameter(f, i, r, sys, *tbl) == 0 ? 1 : 0;

  std::uint32_t max_finite = 0;
  for (auto d : norms)
    if (d != kInfDist) max_finite = std::max(max_finite, d);

  for (std::uint32_t m = 0; m <= max_finite; ++m) {
    bool region_nonempty = false;
    bool constant = true;
    bool oscillation_zero = true;
    std::optional<Rat> value;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (norms[i] <= m) continue;  // inside the excised ball A_m
      region_nonempty = true;
      if (!value)
        value = f.at(i);
      else if (*value != f.at(i))
        constant = false;
      if (flags[i] && !ball_constant[i]) oscillation_zero = false;
      if (!constant && !oscillation_zero) break;
    }
    if (!region_nonempty) continue;  // vacuous excision: nothing left to test
    if (constant && oscillation_zero) return m;
  }
  return std::nullopt;
}

ClassReport classify(const WindowFunction& f, const GeneratorSystem& sys,
                     const ClassifyConfig& cfg) {
  f.validate();
  if (cfg.r_list.empty()) fail(ErrorCode::invalid_config, "classify needs at least one scale r");

  ClassReport report;
  report.modulus_bound = cfg.modulus_bound;

  std::vector<std::uint32_t> rs = cfg.r_list;
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  const std::uint32_t margin = rs.back();
  report.margin = margin;

  const Window& w = f.window;
  auto flags = interior_flags(w, sys, margin);
  auto norms = window_norms(w, sys);

  // (b) oscillation per scale on the shared interior; macro-uniform moduli
  auto tbl = sys.ensure_table(margin, kDefaultBallCap);
  std::vector<std::vector<Rat>> diam_per_r(rs.size());
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    diam_per_r[ri].assign(w.size(), Rat(0));
    parallel_chunks(w.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t i = begin; i < end; ++i)
        if (flags[i]) diam_per_r[ri][i] = ball_diameter(f, i, rs[ri], sys, *tbl);
    });
  }
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    Rat max_diam = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (flags[i] && diam_per_r[ri][i] > max_diam) max_diam = diam_per_r[ri][i];
    report.osc.emplace_back(rs[ri], max_diam);
    MacroRow row;
    row.r = rs[ri];
    row.modulus = max_diam;
    row.within_bound = max_diam <= cfg.modulus_bound;
    if (!row.within_bound && !report.macro_failure_r) report.macro_failure_r = rs[ri];
    report.macro.push_back(std::move(row));
  }

  // (a) bornologous evidence: sup |f| per ideal-base stage
  auto stages = cfg.stages;
  if (stages.empty())
    for (std::uint32_t n = 0; n <= 8; ++n) stages.push_back({n, {identity_element()}});
  for (const auto& [n, fset] : stages) {
    StageRow row;
    row.n = n;
    row.f_size = fset.size();
    auto stage_set = ideal_ball(fset, n, sys);
    for (const Element& e : stage_set) {
      auto pos = w.position(e);
      if (!pos) continue;
      ++row.stage_size;
      Rat v = f.at(*pos);
      if (v < 0) v = -v;
      if (v > row.sup_abs) row.sup_abs = v;
    }
    report.stages.push_back(std::move(row));
  }
  // trend: strictly increasing sup across the last three consecutive stage pairs
  if (report.stages.size() >= 2) {
    const std::size_t pairs = std::min<std::size_t>(3, report.stages.size() - 1);
    bool increasing = true;
    for (std::size_t i = report.stages.size() - pairs; i < report.stages.size(); ++i)
      if (!(report.stages[i - 1].sup_abs < report.stages[i].sup_abs)) increasing = false;
    report.unbounded_trend = increasing;
  }

  // (c) eventually macro-uniform: oscillation after excising A_m
  std::vector<std::uint32_t> excisions = cfg.excisions;
  std::sort(excisions.begin(), excisions.end());
  excisions.erase(std::unique(excisions.begin(), excisions.end()), excisions.end());
  if (excisions.empty()) excisions.push_back(0);
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    for (std::uint32_t m : excisions) {
      EmuRow row;
      row.r = rs[ri];
      row.m = m;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!flags[i] || norms[i] <= m) continue;
        ++row.scored;
        if (diam_per_r[ri][i] > row.osc) row.osc = diam_per_r[ri][i];
      }
      report.emu.push_back(std::move(row));
    }
  }

  // (d) slowly oscillating: least non-vacuous excision with zero oscillation
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    std::optional<std::uint32_t> least;
    for (const EmuRow& row : report.emu) {
      if (row.r != rs[ri] || row.scored == 0) continue;
      if (row.osc == 0) {
        least = row.m;
        break;
      }
    }
    report.so_index.emplace_back(rs[ri], least);
  }
  return report;
}

}  // namespace coarselab
