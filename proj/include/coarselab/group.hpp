#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarselab/errors.hpp"

namespace coarselab {

using Int = boost::multiprecision::cpp_int;

enum class GroupKind { bounded_sum, integers, lattice };

/// A countable abelian group presented as a restricted direct sum of cyclic
/// groups: coordinates 0 .. coordinate_bound-1, each a copy of Z_m or of Z.
struct GroupSpec {
  GroupKind kind = GroupKind::integers;
  std::uint32_t coordinate_bound = 1;
  std::vector<std::uint32_t> moduli;  // bounded_sum with per-coordinate moduli
  std::uint32_t uniform_modulus = 0;  // bounded_sum with one repeated modulus
  std::uint32_t rank = 1;             // lattice

  /// Modulus of a coordinate; 0 means a copy of Z.
  std::uint32_t modulus_at(std::uint32_t coord) const;
  bool all_moduli_two() const;
  void validate() const;

  bool operator==(const GroupSpec&) const = default;
};

GroupSpec bounded_sum_spec(std::uint32_t modulus, std::uint32_t coordinate_bound);
GroupSpec bounded_sum_spec(std::vector<std::uint32_t> moduli);
GroupSpec integers_spec();
GroupSpec lattice_spec(std::uint32_t rank);

/// Canonical sparse element: entries sorted by coordinate, values nonzero,
/// bounded coordinates reduced into [1, m-1].
struct Element {
  std::vector<std::pair<std::uint32_t, Int>> entries;

  bool is_identity() const { return entries.empty(); }
  std::size_t support_size() const { return entries.size(); }
  bool operator==(const Element& other) const { return entries == other.entries; }
};

Element identity_element();
Element make_element(std::vector<std::pair<std::uint32_t, Int>> entries, const GroupSpec& spec);
Element basis_element(std::uint32_t coord, const GroupSpec& spec);
Element int_element(const Int& value);

/// Total order: lexicographic on the canonical entry list (prefix first).
int compare(const Element& a, const Element& b);
bool element_less(const Element& a, const Element& b);
std::string to_string(const Element& e);

Element add(const Element& x, const Element& y, const GroupSpec& spec);
Element neg(const Element& x, const GroupSpec& spec);
Element sub(const Element& x, const Element& y, const GroupSpec& spec);
Element scalar_mul(const Element& x, const Int& c, const GroupSpec& spec);

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

using ElementSet = std::unordered_map<Element, std::size_t, ElementHash>;

enum class WindowKind { support, box };

struct WindowShape {
  WindowKind kind = WindowKind::box;
  std::vector<std::uint32_t> support;    // support window: allowed coordinates
  std::vector<std::pair<Int, Int>> box;  // box window: inclusive [lo, hi] per coordinate
};

WindowShape support_shape(std::vector<std::uint32_t> coords);
WindowShape box_shape(std::vector<std::pair<Int, Int>> intervals);

/// Finite truncation of the group: the point set of a shape in canonical
/// enumeration order, with O(1) membership. The identity belongs to every
/// window.
struct Window {
  GroupSpec spec;
  WindowShape shape;
  std::vector<Element> elements;
  std::unordered_map<Element, std::size_t, ElementHash> index;

  bool contains(const Element& e) const { return index.find(e) != index.end(); }
  std::optional<std::size_t> position(const Element& e) const;
  std::size_t size() const { return elements.size(); }
};

Window enumerate_window(const GroupSpec& spec, const WindowShape& shape);

}  // namespace coarselab
