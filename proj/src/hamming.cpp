#include "coarselab/hamming.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "coarselab/parallel.hpp"

namespace coarselab {

namespace {

HammingPoint mask_to_point(std::uint32_t mask) {
  HammingPoint p;
  for (std::uint32_t i = 0; mask >> i; ++i)
    if ((mask >> i) & 1u) p.push_back(i);
  return p;
}

}  // namespace

std::uint64_t hamming_distance(const HammingPoint& f, const HammingPoint& h) {
  std::size_t i = 0, j = 0;
  std::uint64_t diff = 0;
  while (i < f.size() || j < h.size()) {
    if (j >= h.size() || (i < f.size() && f[i] < h[j])) {
      ++diff;
      ++i;
    } else if (i >= f.size() || h[j] < f[i]) {
      ++diff;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return diff;
}

HammingPoint support_of(const Element& x, const GroupSpec& spec) {
  if (!spec.all_moduli_two())
    fail(ErrorCode::wrong_group, "the canonical bijection needs ⊕Z_2");
  HammingPoint p;
  p.reserve(x.entries.size());
  for (const auto& entry : x.entries) p.push_back(entry.first);
  return p;
}

Element element_from_support(const HammingPoint& h, const GroupSpec& spec) {
  if (!spec.all_moduli_two())
    fail(ErrorCode::wrong_group, "the canonical bijection needs ⊕Z_2");
  std::vector<std::pair<std::uint32_t, Int>> entries;
  entries.reserve(h.size());
  for (auto i : h) entries.emplace_back(i, 1);
  return make_element(std::move(entries), spec);
}

FsCheckResult fs_strict_check(const std::vector<Element>& b, const GroupSpec& spec) {
  if (b.size() > 24)
    fail(ErrorCode::too_long_sequence, "fs_strict_check enumerates 2^|b| sums; |b| <= 24");
  FsCheckResult res;
  const std::uint32_t n = static_cast<std::uint32_t>(b.size());
  std::vector<Element> sums(std::size_t{1} << n);
  std::unordered_map<Element, std::uint32_t, ElementHash> seen;
  seen.reserve(sums.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (mask == 0) {
      sums[0] = identity_element();
    } else {
      const std::uint32_t low = static_cast<std::uint32_t>(__builtin_ctz(mask));
      sums[mask] = add(sums[mask & (mask - 1)], b[low], spec);
    }
    auto [it, fresh] = seen.emplace(sums[mask], mask);
    if (!fresh) {
      res.ok = false;
      res.witness = FsWitness{mask_to_point(it->second), mask_to_point(mask)};
      return res;
    }
  }
  res.ok = true;
  return res;
}

SignedSumResult signed_sum_condition_check(const std::vector<Element>& b,
                                           const GeneratorSystem& sys) {
  if (b.size() > 14)
    fail(ErrorCode::too_long_sequence, "signed-sum check enumerates ~3^|b| sums; |b| <= 14");
  SignedSumResult res;
  const std::uint32_t n = static_cast<std::uint32_t>(b.size());
  const GroupSpec& spec = sys.spec();

  std::vector<std::uint32_t> subset;
  // subsets by size, then lexicographically; sign masks count with the first
  // position as the most significant bit, so (-,-…) comes first
  for (std::uint32_t size = 1; size <= n; ++size) {
    subset.assign(size, 0);
    for (std::uint32_t i = 0; i < size; ++i) subset[i] = i;
    for (;;) {
      const std::uint64_t sign_count = std::uint64_t{1} << size;
      for (std::uint64_t mask = 0; mask < sign_count; ++mask) {
        Element sum = identity_element();
        for (std::uint32_t j = 0; j < size; ++j) {
          const bool plus = (mask >> (size - 1 - j)) & 1u;
          sum = plus ? add(sum, b[subset[j]], spec) : sub(sum, b[subset[j]], spec);
        }
        if (in_sumset(sum, size - 1, sys)) {
          SignedSumViolation v;
          v.subset = subset;
          v.k = size - 1;
          v.sum = sum;
          for (std::uint32_t j = 0; j < size; ++j)
            v.signs.push_back(((mask >> (size - 1 - j)) & 1u) ? 1 : -1);
          res.violation = std::move(v);
          return res;
        }
      }
      // next lexicographic subset of this size
      std::int64_t pos = size - 1;
      while (pos >= 0 && subset[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (std::uint32_t j = static_cast<std::uint32_t>(pos) + 1; j < size; ++j)
        subset[j] = subset[j - 1] + 1;
    }
  }
  res.ok = true;
  return res;
}

namespace {

/// Enumerates all signed subset sums of the prefix and checks that adding
/// ±candidate never lands in A_{subset size}.
bool candidate_passes_signed_condition(const std::vector<Element>& prefix, const Element& candidate,
                                       const GeneratorSystem& sys) {
  const GroupSpec& spec = sys.spec();
  bool ok = true;
  std::function<void(std::size_t, const Element&, std::uint32_t)> rec =
      [&](std::size_t i, const Element& sum, std::uint32_t used) {
        if (!ok) return;
        if (i == prefix.size()) {
          if (used == 0) return;
          if (in_sumset(add(sum, candidate, spec), used, sys) ||
              in_sumset(sub(sum, candidate, spec), used, sys))
            ok = false;
          return;
        }
        rec(i + 1, sum, used);
        rec(i + 1, sub(sum, prefix[i], spec), used + 1);
        rec(i + 1, add(sum, prefix[i], spec), used + 1);
      };
  rec(0, identity_element(), 0);
  return ok;
}

}  // namespace

EmbeddingCertificate greedy_select(const std::vector<Element>& a, const GeneratorSystem& sys,
                                   std::uint32_t target_len, std::uint32_t scan_limit) {
  if (target_len == 0) fail(ErrorCode::invalid_config, "target length must be >= 1");
  if (target_len > 14)
    fail(ErrorCode::too_long_sequence, "greedy_select validates ~3^len sums; target <= 14");
  const GroupSpec& spec = sys.spec();
  const std::size_t limit = std::min<std::size_t>(a.size(), scan_limit);

  EmbeddingCertificate cert;
  // subset-sum differences of the chosen prefix: {Σ ε_i b_i, ε ∈ {-1,0,1}}
  std::unordered_set<Element, ElementHash> diffs{identity_element()};

  const char* last_condition = "condition-1";
  std::size_t last_index = limit;
  std::size_t start = 0;
  while (cert.b_seq.size() < target_len) {
    bool accepted = false;
    for (std::size_t m = start; m < limit; ++m) {
      const Element candidate = make_element(a[m].entries, spec);
      if (diffs.count(candidate)) {
        last_condition = "condition-1";
        last_index = m;
        continue;
      }
      if (!candidate_passes_signed_condition(cert.b_seq, candidate, sys)) {
        last_condition = "condition-4";
        last_index = m;
        continue;
      }
      std::unordered_set<Element, ElementHash> grown;
      grown.reserve(diffs.size() * 3);
      for (const Element& d : diffs) {
        grown.insert(d);
        grown.insert(add(d, candidate, spec));
        grown.insert(sub(d, candidate, spec));
      }
      diffs = std::move(grown);
      cert.b_seq.push_back(candidate);
      cert.source_indices.push_back(static_cast<std::uint32_t>(m));
      start = m + 1;
      accepted = true;
      break;
    }
    if (!accepted) {
      std::string msg = "no candidate before index " + std::to_string(limit) + " passes (step " +
                        std::to_string(cert.b_seq.size()) + ")";
      if (last_index < limit)
        msg += "; last failure: " + std::string(last_condition) + " at source index " +
               std::to_string(last_index);
      fail(ErrorCode::scan_exhausted, msg);
    }
  }

  cert.fs_check = fs_strict_check(cert.b_seq, spec);
  cert.signed_check = signed_sum_condition_check(cert.b_seq, sys);
  cert.verified = cert.fs_check.ok && cert.signed_check.ok;
  cert.support_bound = static_cast<std::uint32_t>(cert.b_seq.size());
  return cert;
}

Element fs_map(const HammingPoint& h, const EmbeddingCertificate& cert, const GroupSpec& spec) {
  Element sum = identity_element();
  for (auto i : h) {
    if (i >= cert.b_seq.size())
      fail(ErrorCode::index_out_of_range,
           "index " + std::to_string(i) + " is outside the certificate sequence");
    sum = add(sum, cert.b_seq[i], spec);
  }
  return sum;
}

const char* to_string(EmbedVerdict v) {
  switch (v) {
    case EmbedVerdict::verified: return "verified";
    case EmbedVerdict::violated: return "violated";
    case EmbedVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

EmbeddingReport verify_isometric_embedding(const EmbeddingCertificate& cert,
                                           const GeneratorSystem& sys,
                                           std::uint32_t support_bound) {
  if (support_bound > cert.b_seq.size())
    fail(ErrorCode::index_out_of_range, "support_bound exceeds the certificate length");
  if (support_bound > 12)
    fail(ErrorCode::too_long_sequence, "support_bound <= 12 keeps the pair scan feasible");
  const GroupSpec& spec = sys.spec();
  const std::uint32_t s = support_bound;

  EmbeddingReport report;
  report.support_bound = s;

  // d(f(F), f(H)) depends only on the disjoint pair (F\H, H\F), so scanning
  // the 3^s sign patterns covers every ordered subset pair
  std::uint64_t patterns = 1;
  for (std::uint32_t i = 0; i < s; ++i) patterns *= 3;

  if (s > 3) {  // warm the distance cache before the parallel scan
    (void)sys.try_table(s, kDefaultBallCap);
    if (s > 6) (void)sys.try_table((s + 1) / 2, kDefaultBallCap);
  }

  struct ChunkState {
    std::vector<std::uint32_t> max_at;          // max distance per exact Hamming distance
    std::uint64_t first_bad = 0;
    bool has_bad = false;
    EmbeddingViolation bad;
  };
  std::vector<ChunkState> states(chunk_count(patterns));
  for (auto& st : states) st.max_at.assign(s + 1, 0);

  parallel_chunks(patterns, [&](std::uint64_t begin, std::uint64_t end, std::size_t chunk) {
    ChunkState& st = states[chunk];
    for (std::uint64_t code = begin; code < end && !st.has_bad; ++code) {
      std::uint64_t rest = code;
      HammingPoint f, h;
      Element value = identity_element();
      for (std::uint32_t i = 0; i < s; ++i) {
        const std::uint32_t digit = rest % 3;
        rest /= 3;
        if (digit == 1) {
          f.push_back(i);
          value = add(value, cert.b_seq[i], spec);
        } else if (digit == 2) {
          h.push_back(i);
          value = sub(value, cert.b_seq[i], spec);
        }
      }
      const std::uint64_t expected = f.size() + h.size();
      auto d = word_distance(value, identity_element(), sys, s);
      if (!d.value || *d.value != expected) {
        st.has_bad = true;
        st.first_bad = code;
        st.bad =
            EmbeddingViolation{std::move(f), std::move(h), expected, d.value};
        break;
      }
      st.max_at[expected] = std::max(st.max_at[expected], *d.value);
    }
  });

  const ChunkState* bad = nullptr;
  for (const auto& st : states)
    if (st.has_bad && (!bad || st.first_bad < bad->first_bad)) bad = &st;
  if (bad) {
    report.verdict = bad->bad.got ? EmbedVerdict::violated : EmbedVerdict::inconclusive;
    report.violation = bad->bad;
    return report;
  }

  std::vector<std::uint32_t> max_at(s + 1, 0);
  for (const auto& st : states)
    for (std::uint32_t i = 0; i <= s; ++i) max_at[i] = std::max(max_at[i], st.max_at[i]);
  report.mu.assign(s + 1, 0);
  std::uint32_t running = 0;
  for (std::uint32_t i = 0; i <= s; ++i) {
    running = std::max(running, max_at[i]);
    report.mu[i] = running;
  }
  report.verdict = EmbedVerdict::verified;
  return report;
}

}  // namespace coarselab
