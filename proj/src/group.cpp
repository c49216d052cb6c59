#include "coarselab/group.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace coarselab {

namespace {

constexpr std::size_t kWindowCap = 1u << 22;

Int reduce_value(const Int& v, std::uint32_t m) {
  if (m == 0) return v;
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::bound_exceeded: return "bound-exceeded";
    case ErrorCode::unbounded_window: return "unbounded-window";
    case ErrorCode::window_too_large: return "window-too-large";
    case ErrorCode::ball_too_large: return "ball-too-large";
    case ErrorCode::too_long_sequence: return "too-long-sequence";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::scan_exhausted: return "scan-exhausted";
    case ErrorCode::candidates_insufficient: return "candidates-insufficient";
    case ErrorCode::empty_interior: return "empty-interior";
    case ErrorCode::wrong_group: return "wrong-group";
  }
  return "unknown";
}

std::uint32_t GroupSpec::modulus_at(std::uint32_t coord) const {
  switch (kind) {
    case GroupKind::bounded_sum:
      return moduli.empty() ? uniform_modulus : moduli[coord];
    case GroupKind::integers:
    case GroupKind::lattice:
      return 0;
  }
  return 0;
}

bool GroupSpec::all_moduli_two() const {
  if (kind != GroupKind::bounded_sum) return false;
  if (moduli.empty()) return uniform_modulus == 2;
  return std::all_of(moduli.begin(), moduli.end(), [](std::uint32_t m) { return m == 2; });
}

void GroupSpec::validate() const {
  if (coordinate_bound < 1) fail(ErrorCode::invalid_config, "coordinate_bound must be >= 1");
  switch (kind) {
    case GroupKind::bounded_sum:
      if (moduli.empty()) {
        if (uniform_modulus < 2) fail(ErrorCode::invalid_config, "modulus must be >= 2");
      } else {
        if (uniform_modulus != 0)
          fail(ErrorCode::invalid_config, "give either modulus or moduli, not both");
        if (moduli.size() != coordinate_bound)
          fail(ErrorCode::invalid_config, "moduli list must have coordinate_bound entries");
        for (auto m : moduli)
          if (m < 2) fail(ErrorCode::invalid_config, "every modulus must be >= 2");
      }
      break;
    case GroupKind::integers:
      if (coordinate_bound != 1) fail(ErrorCode::invalid_config, "integers group has one coordinate");
      break;
    case GroupKind::lattice:
      if (rank < 1) fail(ErrorCode::invalid_config, "rank must be >= 1");
      if (coordinate_bound != rank)
        fail(ErrorCode::invalid_config, "lattice coordinate_bound equals rank");
      break;
  }
}

GroupSpec bounded_sum_spec(std::uint32_t modulus, std::uint32_t coordinate_bound) {
  GroupSpec spec;
  spec.kind = GroupKind::bounded_sum;
  spec.uniform_modulus = modulus;
  spec.coordinate_bound = coordinate_bound;
  spec.validate();
  return spec;
}

GroupSpec bounded_sum_spec(std::vector<std::uint32_t> moduli) {
  GroupSpec spec;
  spec.kind = GroupKind::bounded_sum;
  spec.coordinate_bound = static_cast<std::uint32_t>(moduli.size());
  spec.moduli = std::move(moduli);
  spec.validate();
  return spec;
}

GroupSpec integers_spec() {
  GroupSpec spec;
  spec.kind = GroupKind::integers;
  spec.coordinate_bound = 1;
  return spec;
}

GroupSpec lattice_spec(std::uint32_t rank) {
  GroupSpec spec;
  spec.kind = GroupKind::lattice;
  spec.rank = rank;
  spec.coordinate_bound = rank;
  spec.validate();
  return spec;
}

Element identity_element() { return Element{}; }

Element make_element(std::vector<std::pair<std::uint32_t, Int>> entries, const GroupSpec& spec) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Element out;
  out.entries.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    const std::uint32_t coord = entries[i].first;
    if (coord >= spec.coordinate_bound)
      fail(ErrorCode::bound_exceeded,
           "coordinate " + std::to_string(coord) + " exceeds coordinate_bound " +
               std::to_string(spec.coordinate_bound));
    Int v = entries[i].second;
    for (++i; i < entries.size() && entries[i].first == coord; ++i) v += entries[i].second;
    v = reduce_value(v, spec.modulus_at(coord));
    if (v != 0) out.entries.emplace_back(coord, std::move(v));
  }
  return out;
}

Element basis_element(std::uint32_t coord, const GroupSpec& spec) {
  return make_element({{coord, 1}}, spec);
}

Element int_element(const Int& value) {
  Element e;
  if (value != 0) e.entries.emplace_back(0, value);
  return e;
}

int compare(const Element& a, const Element& b) {
  const std::size_t n = std::min(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.entries[i].first != b.entries[i].first)
      return a.entries[i].first < b.entries[i].first ? -1 : 1;
    if (a.entries[i].second != b.entries[i].second)
      return a.entries[i].second < b.entries[i].second ? -1 : 1;
  }
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size() ? -1 : 1;
  return 0;
}

bool element_less(const Element& a, const Element& b) { return compare(a, b) < 0; }

std::string to_string(const Element& e) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [i, v] : e.entries) {
    if (!first) os << ",";
    first = false;
    os << "[" << i << "," << v << "]";
  }
  os << "]";
  return os.str();
}

Element add(const Element& x, const Element& y, const GroupSpec& spec) {
  Element out;
  out.entries.reserve(x.entries.size() + y.entries.size());
  std::size_t i = 0, j = 0;
  while (i < x.entries.size() || j < y.entries.size()) {
    std::uint32_t coord;
    Int v;
    if (j >= y.entries.size() ||
        (i < x.entries.size() && x.entries[i].first < y.entries[j].first)) {
      coord = x.entries[i].first;
      v = x.entries[i].second;
      ++i;
    } else if (i >= x.entries.size() || y.entries[j].first < x.entries[i].first) {
      coord = y.entries[j].first;
      v = y.entries[j].second;
      ++j;
    } else {
      coord = x.entries[i].first;
      v = x.entries[i].second + y.entries[j].second;
      ++i;
      ++j;
      v = reduce_value(v, spec.modulus_at(coord));
    }
    if (coord >= spec.coordinate_bound)
      fail(ErrorCode::bound_exceeded, "coordinate exceeds coordinate_bound");
    if (v != 0) out.entries.emplace_back(coord, std::move(v));
  }
  return out;
}

Element neg(const Element& x, const GroupSpec& spec) {
  Element out;
  out.entries.reserve(x.entries.size());
  for (const auto& [coord, v] : x.entries) {
    const std::uint32_t m = spec.modulus_at(coord);
    out.entries.emplace_back(coord, m == 0 ? Int(-v) : Int(m - v));
  }
  return out;
}

Element sub(const Element& x, const Element& y, const GroupSpec& spec) {
  return add(x, neg(y, spec), spec);
}

Element scalar_mul(const Element& x, const Int& c, const GroupSpec& spec) {
  Element out;
  out.entries.reserve(x.entries.size());
  for (const auto& [coord, v] : x.entries) {
    Int w = reduce_value(v * c, spec.modulus_at(coord));
    if (w != 0) out.entries.emplace_back(coord, std::move(w));
  }
  return out;
}

std::size_t ElementHash::operator()(const Element& e) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  std::hash<Int> value_hash;
  for (const auto& [i, v] : e.entries) {
    h ^= i + 0x9e3779b9u + (h << 6) + (h >> 2);
    h ^= value_hash(v) + 0x9e3779b9u + (h << 6) + (h >> 2);
  }
  return h;
}

WindowShape support_shape(std::vector<std::uint32_t> coords) {
  WindowShape s;
  s.kind = WindowKind::support;
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  s.support = std::move(coords);
  return s;
}

WindowShape box_shape(std::vector<std::pair<Int, Int>> intervals) {
  WindowShape s;
  s.kind = WindowKind::box;
  s.box = std::move(intervals);
  return s;
}

std::optional<std::size_t> Window::position(const Element& e) const {
  auto it = index.find(e);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Window enumerate_window(const GroupSpec& spec, const WindowShape& shape) {
  spec.validate();
  Window w;
  w.spec = spec;
  w.shape = shape;

  if (shape.kind == WindowKind::support) {
    if (spec.kind != GroupKind::bounded_sum)
      fail(ErrorCode::unbounded_window, "support window needs finite per-coordinate moduli");
    std::size_t count = 1;
    for (auto coord : shape.support) {
      if (coord >= spec.coordinate_bound)
        fail(ErrorCode::bound_exceeded, "support coordinate exceeds coordinate_bound");
      const std::size_t m = spec.modulus_at(coord);
      if (count > kWindowCap / m) fail(ErrorCode::window_too_large, "window would exceed the cap");
      count *= m;
    }
    w.elements.reserve(count);
    std::vector<std::uint32_t> digits(shape.support.size(), 0);
    for (;;) {
      std::vector<std::pair<std::uint32_t, Int>> entries;
      for (std::size_t i = 0; i < digits.size(); ++i)
        if (digits[i] != 0) entries.emplace_back(shape.support[i], digits[i]);
      w.elements.push_back(make_element(std::move(entries), spec));
      std::size_t pos = 0;
      while (pos < digits.size()) {
        if (++digits[pos] < spec.modulus_at(shape.support[pos])) break;
        digits[pos] = 0;
        ++pos;
      }
      if (pos == digits.size()) break;
    }
  } else {
    if (spec.kind == GroupKind::bounded_sum)
      fail(ErrorCode::invalid_config, "box window applies to integers and lattice groups");
    const std::size_t dims = spec.kind == GroupKind::integers ? 1 : spec.rank;
    if (shape.box.size() != dims)
      fail(ErrorCode::invalid_config, "box window needs one interval per coordinate");
    std::size_t count = 1;
    for (const auto& [lo, hi] : shape.box) {
      if (lo > hi) fail(ErrorCode::invalid_config, "box interval has lo > hi");
      if (lo > 0 || hi < 0)
        fail(ErrorCode::invalid_config, "every window must contain the identity");
      const Int width = hi - lo + 1;
      if (width > Int(kWindowCap) || count > kWindowCap / static_cast<std::size_t>(width))
        fail(ErrorCode::window_too_large, "window would exceed the cap");
      count *= static_cast<std::size_t>(width);
    }
    w.elements.reserve(count);
    std::vector<Int> values;
    values.reserve(shape.box.size());
    for (const auto& interval : shape.box) values.push_back(interval.first);
    for (;;) {
      std::vector<std::pair<std::uint32_t, Int>> entries;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0) entries.emplace_back(static_cast<std::uint32_t>(i), values[i]);
      w.elements.push_back(make_element(std::move(entries), spec));
      std::size_t pos = 0;
      while (pos < values.size()) {
        if (++values[pos] <= shape.box[pos].second) break;
        values[pos] = shape.box[pos].first;
        ++pos;
      }
      if (pos == values.size()) break;
    }
  }

  std::sort(w.elements.begin(), w.elements.end(), element_less);
  w.index.reserve(w.elements.size());
  for (std::size_t i = 0; i < w.elements.size(); ++i) w.index.emplace(w.elements[i], i);
  if (w.index.size() != w.elements.size())
    fail(ErrorCode::invalid_config, "window enumeration produced duplicates");
  return w;
}

}  // namespace coarselab
