#include "coarselab/dimension.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "coarselab/parallel.hpp"

namespace coarselab {

namespace {

std::vector<std::vector<Element>> normalize_candidates(
    const std::vector<std::vector<Element>>& candidates) {
  std::vector<std::vector<Element>> out;
  out.reserve(candidates.size());
  for (const auto& cand : candidates) {
    if (cand.empty()) fail(ErrorCode::invalid_config, "candidate sets must be nonempty");
    std::vector<Element> set = cand;
    std::sort(set.begin(), set.end(), element_less);
    set.erase(std::unique(set.begin(), set.end()), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<Element> halo(const std::vector<Element>& set, std::uint32_t r,
                          const GeneratorSystem& sys) {
  return ideal_ball(set, r, sys);
}

bool sorted_intersect(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i], b[j]);
    if (c == 0) return true;
    if (c < 0)
      ++i;
    else
      ++j;
  }
  return false;
}

/// Smallest D with the set inside one ball of radius D, found by doubling
/// the k-center search bound.
std::uint32_t one_center_radius(const std::vector<Element>& set, const GeneratorSystem& sys) {
  for (std::uint32_t max_r = 2; max_r <= 512; max_r *= 2) {
    auto res = cover_radius(set, 1, sys, max_r);
    if (!res.exceeded) return res.radius;
  }
  fail(ErrorCode::candidates_insufficient,
       "a set cannot be covered by a single ball of radius <= 512");
}

std::uint32_t witness_class_count(const CoverWitness& w) {
  return static_cast<std::uint32_t>(w.classes.size());
}

}  // namespace

const char* to_string(WitnessViolationKind kind) {
  switch (kind) {
    case WitnessViolationKind::empty_set: return "empty-set";
    case WitnessViolationKind::cover: return "cover";
    case WitnessViolationKind::boundedness: return "boundedness";
    case WitnessViolationKind::separation: return "separation";
  }
  return "unknown";
}

WitnessVerdict verify_witness(const CoverWitness& w) {
  WitnessVerdict verdict;

  for (std::size_t ci = 0; ci < w.classes.size(); ++ci)
    for (std::size_t si = 0; si < w.classes[ci].size(); ++si)
      if (w.classes[ci][si].empty()) {
        verdict.violation = WitnessViolation{WitnessViolationKind::empty_set,
                                             "class " + std::to_string(ci) + " set " +
                                                 std::to_string(si) + " is empty",
                                             std::nullopt,
                                             {{ci, si}},
                                             std::nullopt};
        return verdict;
      }

  std::unordered_set<Element, ElementHash> covered;
  for (const auto& cls : w.classes)
    for (const auto& set : cls) covered.insert(set.begin(), set.end());
  for (const Element& x : w.window.elements)
    if (!covered.count(x)) {
      verdict.violation =
          WitnessViolation{WitnessViolationKind::cover,
                           "window element " + to_string(x) + " is uncovered",
                           x, std::nullopt, std::nullopt};
      return verdict;
    }

  for (std::size_t ci = 0; ci < w.classes.size(); ++ci)
    for (std::size_t si = 0; si < w.classes[ci].size(); ++si) {
      auto res = cover_radius(w.classes[ci][si], 1, w.sys, w.D);
      if (res.exceeded) {
        verdict.violation = WitnessViolation{WitnessViolationKind::boundedness,
                                             "class " + std::to_string(ci) + " set " +
                                                 std::to_string(si) +
                                                 " does not fit a ball of radius " +
                                                 std::to_string(w.D),
                                             std::nullopt,
                                             {{ci, si}},
                                             std::nullopt};
        return verdict;
      }
    }

  // same-class halo disjointness; balls taken in the full group
  struct Pair {
    std::size_t cls, a, b;
  };
  std::vector<Pair> pairs;
  std::vector<std::vector<std::vector<Element>>> halos(w.classes.size());
  (void)w.sys.try_table(w.r, kDefaultBallCap);  // warm before the parallel scan
  for (std::size_t ci = 0; ci < w.classes.size(); ++ci) {
    halos[ci].reserve(w.classes[ci].size());
    for (const auto& set : w.classes[ci]) halos[ci].push_back(halo(set, w.r, w.sys));
    for (std::size_t a = 0; a < w.classes[ci].size(); ++a)
      for (std::size_t b = a + 1; b < w.classes[ci].size(); ++b) pairs.push_back({ci, a, b});
  }

  std::vector<std::size_t> first_bad(chunk_count(pairs.size()), pairs.size());
  parallel_chunks(pairs.size(), [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t i = begin; i < end; ++i) {
      const Pair& p = pairs[i];
      if (sorted_intersect(halos[p.cls][p.a], halos[p.cls][p.b])) {
        first_bad[chunk] = i;
        return;
      }
    }
  });
  std::size_t bad = pairs.size();
  for (std::size_t idx : first_bad) bad = std::min(bad, idx);
  if (bad < pairs.size()) {
    const Pair& p = pairs[bad];
    verdict.violation = WitnessViolation{WitnessViolationKind::separation,
                                         "class " + std::to_string(p.cls) + " sets " +
                                             std::to_string(p.a) + " and " + std::to_string(p.b) +
                                             " have intersecting radius-" + std::to_string(w.r) +
                                             " halos",
                                         std::nullopt,
                                         {{p.cls, p.a}},
                                         p.b};
    return verdict;
  }

  verdict.valid = true;
  return verdict;
}

CoverWitness greedy_cover(const Window& window, const GeneratorSystem& sys,
                          const std::vector<std::vector<Element>>& candidates, std::uint32_t r) {
  auto cands = normalize_candidates(candidates);

  std::vector<std::vector<std::size_t>> member_positions(cands.size());
  for (std::size_t j = 0; j < cands.size(); ++j)
    for (const Element& e : cands[j])
      if (auto pos = window.position(e)) member_positions[j].push_back(*pos);

  std::vector<char> covered(window.size(), 0);
  std::size_t remaining = window.size();
  std::vector<std::size_t> selected;
  while (remaining > 0) {
    std::size_t best = cands.size();
    std::size_t best_gain = 0;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      std::size_t gain = 0;
      for (std::size_t p : member_positions[j])
        if (!covered[p]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best == cands.size())
      fail(ErrorCode::candidates_insufficient, "candidates do not cover the window");
    for (std::size_t p : member_positions[best])
      if (!covered[p]) {
        covered[p] = 1;
        --remaining;
      }
    selected.push_back(best);
  }

  std::vector<std::vector<Element>> halos(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) halos[i] = halo(cands[selected[i]], r, sys);

  // first-fit on the conflict graph, in selection order
  std::vector<std::vector<std::size_t>> class_members;
  std::vector<std::size_t> class_of(selected.size(), 0);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    std::size_t cls = 0;
    for (; cls < class_members.size(); ++cls) {
      bool clash = false;
      for (std::size_t other : class_members[cls])
        if (sorted_intersect(halos[i], halos[other])) {
          clash = true;
          break;
        }
      if (!clash) break;
    }
    if (cls == class_members.size()) class_members.emplace_back();
    class_members[cls].push_back(i);
    class_of[i] = cls;
  }

  CoverWitness witness;
  witness.window = window;
  witness.sys = sys;
  witness.r = r;
  witness.classes.resize(class_members.size());
  std::uint32_t d_max = 0;
  for (std::size_t cls = 0; cls < class_members.size(); ++cls)
    for (std::size_t i : class_members[cls]) {
      witness.classes[cls].push_back(cands[selected[i]]);
      d_max = std::max(d_max, one_center_radius(cands[selected[i]], sys));
    }
  witness.D = d_max;
  return witness;
}

MinClassesResult exact_min_classes(const Window& window, const GeneratorSystem& sys,
                                   const std::vector<std::vector<Element>>& candidates,
                                   std::uint32_t r, std::uint64_t budget) {
  auto cands = normalize_candidates(candidates);
  const std::size_t nc = cands.size();

  std::vector<std::vector<std::size_t>> member_positions(nc);
  std::vector<std::vector<std::size_t>> point_cover(window.size());
  for (std::size_t j = 0; j < nc; ++j)
    for (const Element& e : cands[j])
      if (auto pos = window.position(e)) {
        member_positions[j].push_back(*pos);
        point_cover[*pos].push_back(j);
      }
  for (std::size_t p = 0; p < window.size(); ++p)
    if (point_cover[p].empty())
      fail(ErrorCode::candidates_insufficient, "candidates do not cover the window");

  MinClassesResult out;
  CoverWitness greedy = greedy_cover(window, sys, candidates, r);
  const std::uint32_t ub = witness_class_count(greedy);

  std::vector<std::vector<Element>> halos(nc);
  for (std::size_t j = 0; j < nc; ++j) halos[j] = halo(cands[j], r, sys);
  std::vector<std::vector<char>> conflict(nc, std::vector<char>(nc, 0));
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = a + 1; b < nc; ++b)
      conflict[a][b] = conflict[b][a] = sorted_intersect(halos[a], halos[b]) ? 1 : 0;

  // forced sets (unique coverer of some point) give a clique lower bound
  std::vector<std::size_t> forced;
  for (std::size_t p = 0; p < window.size(); ++p)
    if (point_cover[p].size() == 1) forced.push_back(point_cover[p][0]);
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  std::vector<std::size_t> clique;
  for (std::size_t j : forced) {
    bool extends = true;
    for (std::size_t c : clique)
      if (!conflict[j][c]) {
        extends = false;
        break;
      }
    if (extends) clique.push_back(j);
  }
  const std::uint32_t lb = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(clique.size()));

  if (lb >= ub) {
    out.classes = ub;
    out.witness = std::move(greedy);
    out.exact = true;
    return out;
  }

  std::vector<std::size_t> assignment(nc, 0);  // 0 = unused, else class index
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> cover_count(window.size(), 0);
  std::uint64_t nodes = 0;
  bool aborted = false;

  std::function<bool(std::uint32_t)> decide = [&](std::uint32_t n) -> bool {
    if (++nodes > budget) {
      aborted = true;
      return false;
    }
    std::size_t pick = window.size();
    std::size_t pick_options = std::numeric_limits<std::size_t>::max();
    for (std::size_t p = 0; p < window.size(); ++p)
      if (cover_count[p] == 0 && point_cover[p].size() < pick_options) {
        pick_options = point_cover[p].size();
        pick = p;
      }
    if (pick == window.size()) return true;  // everything covered

    for (std::size_t j : point_cover[pick]) {
      const std::size_t class_limit = std::min<std::size_t>(members.size() + 1, n);
      for (std::size_t cls = 1; cls <= class_limit; ++cls) {
        bool clash = false;
        if (cls <= members.size())
          for (std::size_t other : members[cls - 1])
            if (conflict[j][other]) {
              clash = true;
              break;
            }
        if (clash) continue;
        if (cls > members.size()) members.emplace_back();
        members[cls - 1].push_back(j);
        assignment[j] = cls;
        for (std::size_t p : member_positions[j]) ++cover_count[p];
        if (decide(n)) return true;
        for (std::size_t p : member_positions[j]) --cover_count[p];
        assignment[j] = 0;
        members[cls - 1].pop_back();
        if (members.back().empty()) members.pop_back();
        if (aborted) return false;
      }
    }
    return false;
  };

  for (std::uint32_t n = lb; n < ub; ++n) {
    members.clear();
    std::fill(assignment.begin(), assignment.end(), 0);
    std::fill(cover_count.begin(), cover_count.end(), 0);
    if (decide(n)) {
      CoverWitness witness;
      witness.window = window;
      witness.sys = sys;
      witness.r = r;
      witness.classes.resize(members.size());
      std::uint32_t d_max = 0;
      for (std::size_t cls = 0; cls < members.size(); ++cls)
        for (std::size_t j : members[cls]) {
          witness.classes[cls].push_back(cands[j]);
          d_max = std::max(d_max, one_center_radius(cands[j], sys));
        }
      witness.D = d_max;
      out.classes = static_cast<std::uint32_t>(members.size());
      out.witness = std::move(witness);
      out.exact = true;
      out.nodes = nodes;
      return out;
    }
    if (aborted) {
      out.classes = ub;
      out.witness = std::move(greedy);
      out.exact = false;
      out.nodes = nodes;
      return out;
    }
  }

  out.classes = ub;
  out.witness = std::move(greedy);
  out.exact = true;  // every smaller class count was refuted by exhausted search
  out.nodes = nodes;
  return out;
}

DimProfile dim_profile(const Window& window, const GeneratorSystem& sys, const CandidateRule& rule,
                       const std::vector<std::uint32_t>& r_list, std::uint64_t budget) {
  std::vector<std::uint32_t> rs = r_list;
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  DimProfile profile;
  for (std::uint32_t r : rs) {
    auto cands = rule(r);
    DimProfileRow row;
    row.r = r;
    CoverWitness greedy = greedy_cover(window, sys, cands, r);
    row.greedy_classes = witness_class_count(greedy);
    if (budget > 0) {
      auto res = exact_min_classes(window, sys, cands, r, budget);
      row.exact_classes = res.classes;
      row.exact = res.exact;
      row.witness = std::move(res.witness);
    } else {
      row.exact = false;
      row.witness = std::move(greedy);
    }
    row.D = row.witness.D;
    profile.rows.push_back(std::move(row));
  }
  return profile;
}

std::vector<std::vector<Element>> singleton_candidates(const Window& window) {
  std::vector<std::vector<Element>> out;
  out.reserve(window.size());
  for (const Element& e : window.elements) out.push_back({e});
  return out;
}

std::vector<std::vector<Element>> ball_candidates(const Window& window, const GeneratorSystem& sys,
                                                  std::uint32_t radius) {
  std::vector<std::vector<Element>> out;
  std::set<std::vector<std::string>> seen;
  for (const Element& x : window.elements) {
    std::vector<Element> set;
    for (Element& e : ball(x, radius, sys))
      if (window.contains(e)) set.push_back(std::move(e));
    std::vector<std::string> key;
    key.reserve(set.size());
    for (const Element& e : set) key.push_back(to_string(e));
    if (seen.insert(std::move(key)).second) out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::vector<Element>> brick_candidates(const Window& window, std::uint32_t side,
                                                   std::uint32_t stride) {
  if (window.shape.kind != WindowKind::box)
    fail(ErrorCode::invalid_config, "brick candidates need a box window");
  if (side < 1 || stride < 1) fail(ErrorCode::invalid_config, "brick side and stride must be >= 1");
  const auto& box = window.shape.box;
  const std::size_t dims = box.size();

  std::vector<std::vector<Int>> anchors(dims);
  for (std::size_t d = 0; d < dims; ++d)
    for (Int a = box[d].first; a <= box[d].second; a += stride) anchors[d].push_back(a);

  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> idx(dims, 0);
  for (;;) {
    std::vector<std::pair<Int, Int>> brick(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      const Int lo = anchors[d][idx[d]];
      brick[d] = {lo, std::min(Int(lo + side - 1), box[d].second)};
    }
    std::vector<Element> set;
    std::vector<Int> vals(dims);
    for (std::size_t d = 0; d < dims; ++d) vals[d] = brick[d].first;
    for (;;) {
      std::vector<std::pair<std::uint32_t, Int>> entries;
      for (std::size_t d = 0; d < dims; ++d)
        if (vals[d] != 0) entries.emplace_back(static_cast<std::uint32_t>(d), vals[d]);
      set.push_back(make_element(std::move(entries), window.spec));
      std::size_t pos = 0;
      while (pos < dims) {
        if (++vals[pos] <= brick[pos].second) break;
        vals[pos] = brick[pos].first;
        ++pos;
      }
      if (pos == dims) break;
    }
    std::sort(set.begin(), set.end(), element_less);
    out.push_back(std::move(set));

    std::size_t pos = 0;
    while (pos < dims) {
      if (++idx[pos] < anchors[pos].size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == dims) break;
  }
  return out;
}

}  // namespace coarselab
