#include "coarselab/generators.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <unordered_set>

namespace coarselab {

namespace {

/// Per-coordinate magnitude: |v| on free coordinates, min(v, m-v) on Z_m.
/// Subadditive coordinatewise, which makes the DFS pruning bound admissible.
Int coordinate_magnitude(const Int& v, std::uint32_t m) {
  if (m == 0) return abs(v);
  Int alt = Int(m) - v;
  return v < alt ? v : alt;
}

Int element_magnitude(const Element& e, const GroupSpec& spec) {
  Int best = 0;
  for (const auto& [coord, v] : e.entries) {
    Int mag = coordinate_magnitude(v, spec.modulus_at(coord));
    if (mag > best) best = mag;
  }
  return best;
}

std::uint64_t additive_order(const Element& g, const GroupSpec& spec) {
  constexpr std::uint64_t kLarge = std::uint64_t(1) << 40;
  std::uint64_t order = 1;
  for (const auto& [coord, v] : g.entries) {
    const std::uint32_t m = spec.modulus_at(coord);
    if (m == 0) return 0;  // a free coordinate makes the order infinite
    const std::uint64_t d =
        static_cast<std::uint64_t>(gcd(Int(m), v).convert_to<std::uint64_t>());
    const std::uint64_t coord_order = m / d;
    order = std::lcm(order, coord_order);
    if (order > kLarge) return kLarge;
  }
  return order;
}

}  // namespace

std::optional<std::uint32_t> SumsetTable::norm_of(const Element& e) const {
  auto it = norm.find(e);
  if (it == norm.end()) return std::nullopt;
  return it->second;
}

std::size_t SumsetTable::size_up_to(std::uint32_t r) const {
  std::size_t total = 0;
  const std::size_t top = std::min<std::size_t>(layers.size(), static_cast<std::size_t>(r) + 1);
  for (std::size_t d = 0; d < top; ++d) total += layers[d].size();
  return total;
}

struct GeneratorSystem::Cache {
  std::mutex m;
  std::shared_ptr<const SumsetTable> table;
  std::size_t failed_cap = 0;  // growth beyond the current radius is known to bust caps <= this

  // DFS metadata, immutable after construction.
  std::vector<std::size_t> order;          // generator indices, largest magnitude first
  std::vector<Int> suffix_mag;
  std::vector<std::size_t> suffix_supp;
  std::vector<std::uint64_t> gen_orders;   // additive order per generator, 0 = infinite
};

GeneratorSystem::GeneratorSystem(GroupSpec spec, std::vector<Element> generators)
    : spec_(std::move(spec)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  spec_.validate();
  for (auto& g : generators_) {
    g = make_element(g.entries, spec_);
    if (g.is_identity())
      fail(ErrorCode::invalid_config, "generators must be nonzero");
  }

  const std::size_t n = generators_.size();
  cache_->gen_orders.resize(n);
  std::vector<Int> mags(n);
  for (std::size_t i = 0; i < n; ++i) {
    mags[i] = element_magnitude(generators_[i], spec_);
    cache_->gen_orders[i] = additive_order(generators_[i], spec_);
  }
  cache_->order.resize(n);
  std::iota(cache_->order.begin(), cache_->order.end(), std::size_t{0});
  std::sort(cache_->order.begin(), cache_->order.end(), [&](std::size_t a, std::size_t b) {
    if (mags[a] != mags[b]) return mags[a] > mags[b];
    if (generators_[a].support_size() != generators_[b].support_size())
      return generators_[a].support_size() > generators_[b].support_size();
    return a < b;
  });
  cache_->suffix_mag.assign(n, 0);
  cache_->suffix_supp.assign(n, 0);
  Int mag_acc = 0;
  std::size_t supp_acc = 0;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t gi = cache_->order[i];
    if (mags[gi] > mag_acc) mag_acc = mags[gi];
    supp_acc = std::max(supp_acc, generators_[gi].support_size());
    cache_->suffix_mag[i] = mag_acc;
    cache_->suffix_supp[i] = supp_acc;
  }
}

std::shared_ptr<const SumsetTable> GeneratorSystem::current_table() const {
  std::lock_guard<std::mutex> lock(cache_->m);
  return cache_->table;
}

std::shared_ptr<const SumsetTable> GeneratorSystem::try_table(std::uint32_t radius,
                                                              std::size_t cap) const {
  std::lock_guard<std::mutex> lock(cache_->m);
  auto cur = cache_->table;
  if (cur && cur->covers(radius))
    return cur->size_up_to(radius) <= cap ? cur : nullptr;
  if (cap <= cache_->failed_cap) return nullptr;

  auto grown = std::make_shared<SumsetTable>();
  if (cur) *grown = *cur;
  if (grown->layers.empty()) {
    grown->layers.push_back({identity_element()});
    grown->norm.emplace(identity_element(), 0);
  }
  while (!grown->covers(radius)) {
    std::vector<Element> next;
    const std::vector<Element>& frontier = grown->layers.back();
    const std::uint32_t depth = grown->radius() + 1;
    for (const Element& e : frontier) {
      for (const Element& g : generators_) {
        for (int sign = 0; sign < 2; ++sign) {
          Element v = sign == 0 ? add(e, g, spec_) : sub(e, g, spec_);
          if (grown->norm.emplace(v, depth).second) next.push_back(std::move(v));
        }
      }
    }
    if (next.empty()) {
      grown->exhausted = true;
      break;
    }
    if (grown->norm.size() > cap) {
      // roll the uncommitted layer back and remember the failure
      for (const Element& e : next) grown->norm.erase(e);
      cache_->failed_cap = std::max(cache_->failed_cap, cap);
      cache_->table = grown;
      return nullptr;
    }
    grown->layers.push_back(std::move(next));
  }
  cache_->table = grown;
  return grown;
}

std::shared_ptr<const SumsetTable> GeneratorSystem::ensure_table(std::uint32_t radius,
                                                                 std::size_t cap) const {
  auto tbl = try_table(radius, cap);
  if (!tbl)
    fail(ErrorCode::ball_too_large,
         "sumset A_" + std::to_string(radius) + " exceeds the enumeration cap " +
             std::to_string(cap));
  return tbl;
}

namespace {

/// Is t a sum of at most `budget` signed generators? Exact DFS over
/// coefficient vectors with magnitude/support lower-bound pruning.
bool deepening_member_impl(const Element& t, std::uint32_t budget, const GroupSpec& spec,
                           const std::vector<Element>& gens,
                           const std::vector<std::size_t>& order,
                           const std::vector<Int>& suffix_mag,
                           const std::vector<std::size_t>& suffix_supp,
                           const std::vector<std::uint64_t>& gen_orders) {
  const std::size_t n = order.size();

  std::function<bool(std::size_t, const Element&, std::uint32_t)> rec =
      [&](std::size_t pos, const Element& res, std::uint32_t left) -> bool {
    if (res.is_identity()) return true;
    if (pos == n || left == 0) return false;
    if (suffix_supp[pos] == 0) return false;
    const std::size_t supp_need =
        (res.support_size() + suffix_supp[pos] - 1) / suffix_supp[pos];
    if (supp_need > left) return false;
    Int mag = element_magnitude(res, spec);
    if (mag > 0) {
      Int mag_need = (mag + suffix_mag[pos] - 1) / suffix_mag[pos];
      if (mag_need > left) return false;
    }

    const std::size_t gi = order[pos];
    const Element& g = gens[gi];
    const std::uint64_t ord = gen_orders[gi];
    std::uint64_t cmax = left;
    if (ord != 0) cmax = std::min<std::uint64_t>(cmax, ord / 2);
    const bool skip_low_end = ord != 0 && ord % 2 == 0 && cmax == ord / 2;

    // residual for coefficient c is res - c*g; scan c ascending, updating by -g
    Element cur = add(res, scalar_mul(g, Int(cmax), spec), spec);
    const std::int64_t lo = -static_cast<std::int64_t>(cmax);
    const std::int64_t hi = static_cast<std::int64_t>(cmax);
    for (std::int64_t c = lo; c <= hi; ++c) {
      const bool duplicate = skip_low_end && c == lo;  // -ord/2 and +ord/2 coincide
      if (!duplicate) {
        const std::uint32_t cost = static_cast<std::uint32_t>(c < 0 ? -c : c);
        if (rec(pos + 1, cur, left - cost)) return true;
      }
      if (c < hi) cur = sub(cur, g, spec);
    }
    return false;
  };
  return rec(0, t, budget);
}

std::optional<std::uint32_t> mitm_distance(const Element& t, const SumsetTable& tbl,
                                           std::uint32_t max_r, const GroupSpec& spec) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [u, du] : tbl.norm) {
    if (du > max_r) continue;
    auto it = tbl.norm.find(sub(t, u, spec));
    if (it != tbl.norm.end()) best = std::min(best, du + it->second);
  }
  if (best <= max_r) return best;
  return std::nullopt;
}

}  // namespace

bool GeneratorSystem::deepening_member(const Element& t, std::uint32_t budget) const {
  return deepening_member_impl(t, budget, spec_, generators_, cache_->order, cache_->suffix_mag,
                               cache_->suffix_supp, cache_->gen_orders);
}

DistanceResult word_distance(const Element& x, const Element& y, const GeneratorSystem& sys,
                             std::uint32_t max_r) {
  DistanceResult out;
  out.search_bound = max_r;
  const Element t = sub(x, y, sys.spec());
  if (t.is_identity()) {
    out.value = 0;
    return out;
  }
  if (max_r == 0) return out;

  if (auto full = sys.try_table(max_r, kDefaultBallCap); full && full->covers(max_r)) {
    if (auto d = full->norm_of(t); d && *d <= max_r) out.value = *d;
    return out;
  }

  if (max_r > 6) {
    const std::uint32_t half = (max_r + 1) / 2;
    if (auto tbl = sys.try_table(half, kDefaultBallCap); tbl && tbl->covers(half)) {
      out.value = mitm_distance(t, *tbl, max_r, sys.spec());
      return out;
    }
  }
  for (std::uint32_t r = 1; r <= max_r; ++r) {
    if (sys.deepening_member(t, r)) {
      out.value = r;
      return out;
    }
  }
  return out;
}

bool in_sumset(const Element& x, std::uint32_t n, const GeneratorSystem& sys) {
  return word_distance(x, identity_element(), sys, n).value.has_value();
}

std::vector<Element> ball(const Element& x, std::uint32_t n, const GeneratorSystem& sys,
                          std::size_t cap) {
  auto tbl = sys.ensure_table(n, cap);
  std::vector<Element> out;
  out.reserve(tbl->size_up_to(n));
  const std::size_t top = std::min<std::size_t>(tbl->layers.size(), static_cast<std::size_t>(n) + 1);
  for (std::size_t d = 0; d < top; ++d)
    for (const Element& u : tbl->layers[d]) out.push_back(add(x, u, sys.spec()));
  std::sort(out.begin(), out.end(), element_less);
  return out;
}

std::vector<Element> ideal_ball(const std::vector<Element>& f, std::uint32_t n,
                                const GeneratorSystem& sys, std::size_t cap) {
  if (f.empty()) return {};
  auto tbl = sys.ensure_table(n, cap);
  std::unordered_set<Element, ElementHash> seen;
  const std::size_t top = std::min<std::size_t>(tbl->layers.size(), static_cast<std::size_t>(n) + 1);
  for (const Element& center : f) {
    for (std::size_t d = 0; d < top; ++d)
      for (const Element& u : tbl->layers[d]) {
        seen.insert(add(center, u, sys.spec()));
        if (seen.size() > cap)
          fail(ErrorCode::ball_too_large, "ideal ball exceeds the enumeration cap");
      }
  }
  std::vector<Element> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), element_less);
  return out;
}

CoverRadiusResult cover_radius(const std::vector<Element>& s, std::uint32_t k,
                               const GeneratorSystem& sys, std::uint32_t max_r) {
  if (k < 1) fail(ErrorCode::invalid_config, "cover_radius needs k >= 1");
  CoverRadiusResult res;
  res.search_bound = max_r;

  std::vector<Element> points = s;
  std::sort(points.begin(), points.end(), element_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return res;

  // any useful center lies within max_r of a covered point
  std::unordered_set<Element, ElementHash> cand_set;
  for (const Element& p : points)
    for (Element& e : ball(p, max_r, sys)) cand_set.insert(std::move(e));
  std::vector<Element> cand(cand_set.begin(), cand_set.end());
  std::sort(cand.begin(), cand.end(), element_less);

  const std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  const std::size_t np = points.size();
  const std::size_t nc = cand.size();
  std::vector<std::vector<std::uint32_t>> dist(np, std::vector<std::uint32_t>(nc, kInf));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      auto d = word_distance(points[i], cand[j], sys, max_r);
      if (d.value) dist[i][j] = *d.value;
    }

  for (std::uint32_t r = 0; r <= max_r; ++r) {
    std::vector<std::vector<std::size_t>> covers(nc);
    std::vector<std::size_t> last_coverer(np, nc);  // nc = none
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t i = 0; i < np; ++i)
        if (dist[i][j] <= r) {
          covers[j].push_back(i);
          last_coverer[i] = j;
        }
    if (std::any_of(last_coverer.begin(), last_coverer.end(),
                    [&](std::size_t j) { return j == nc; }))
      continue;

    std::vector<std::size_t> chosen;
    std::vector<char> covered(np, 0);
    std::size_t covered_count = 0;
    // ascending-index DFS: the first full cover found is the lexicographically
    // least center set of the given size
    std::function<bool(std::size_t, std::uint32_t)> dfs = [&](std::size_t start,
                                                              std::uint32_t slots) -> bool {
      if (covered_count == np) return true;
      if (slots == 0) return false;
      for (std::size_t i = 0; i < np; ++i)
        if (!covered[i] && (last_coverer[i] < start)) return false;
      for (std::size_t j = start; j < nc; ++j) {
        std::vector<std::size_t> newly;
        for (std::size_t i : covers[j])
          if (!covered[i]) newly.push_back(i);
        if (newly.empty()) continue;  // a redundant center never appears in a minimal cover
        for (std::size_t i : newly) covered[i] = 1;
        covered_count += newly.size();
        chosen.push_back(j);
        if (dfs(j + 1, slots - 1)) return true;
        chosen.pop_back();
        covered_count -= newly.size();
        for (std::size_t i : newly) covered[i] = 0;
      }
      return false;
    };

    for (std::uint32_t sz = 1; sz <= k; ++sz) {
      if (dfs(0, sz)) {
        res.radius = r;
        res.centers.reserve(chosen.size());
        for (std::size_t j : chosen) res.centers.push_back(cand[j]);
        // direct membership check: S ⊆ F + A_radius
        for (const Element& p : points) {
          bool ok = false;
          for (const Element& c : res.centers)
            if (in_sumset(sub(p, c, sys.spec()), r, sys)) {
              ok = true;
              break;
            }
          if (!ok) throw std::logic_error("cover_radius produced an invalid cover");
        }
        return res;
      }
    }
  }
  res.exceeded = true;
  return res;
}

std::vector<Element> merge_sequences(const std::vector<std::vector<Element>>& seqs) {
  if (seqs.empty()) fail(ErrorCode::invalid_config, "merge needs at least one sequence");
  std::size_t longest = 0;
  for (const auto& s : seqs) longest = std::max(longest, s.size());
  if (longest == 0) fail(ErrorCode::invalid_config, "merge needs a nonempty sequence");
  std::vector<Element> out;
  for (std::size_t pos = 0; pos < longest; ++pos)
    for (const auto& s : seqs)
      if (pos < s.size()) out.push_back(s[pos]);
  return out;
}

}  // namespace coarselab
