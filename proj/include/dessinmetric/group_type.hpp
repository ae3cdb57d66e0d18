#pragma once

#include <map>
#include <optional>
#include <string>

namespace dessinmetric {

/// Isomorphism type of a finite group that can act on the sphere.
/// Dihedral(n) has 2n elements.
struct GroupType {
  enum class Kind { Cyclic, Dihedral, A4, S4, A5, Other };

  Kind kind = Kind::Other;
  int n = 0;  // only meaningful for Cyclic and Dihedral

  static GroupType cyclic(int n) { return {Kind::Cyclic, n}; }
  static GroupType dihedral(int n) { return {Kind::Dihedral, n}; }
  static GroupType a4() { return {Kind::A4, 0}; }
  static GroupType s4() { return {Kind::S4, 0}; }
  static GroupType a5() { return {Kind::A5, 0}; }
  static GroupType other() { return {Kind::Other, 0}; }

  /// Number of elements, 0 for Other.
  int order() const;
  bool is_cyclic() const { return kind == Kind::Cyclic; }

  /// "C6", "D3", "A4", "S4", "A5" or "Other".
  std::string tag() const;
  /// "Cyclic(6)", "Dihedral(3)", ...
  std::string display_name() const;

  friend bool operator==(const GroupType&, const GroupType&) = default;
};

/// Inverse of GroupType::tag(); nullopt for anything unrecognised.
std::optional<GroupType> parse_group_tag(const std::string& tag);

/// Element-order census: order of element -> number of elements of that order.
using OrderCensus = std::map<int, int>;

/// Decision table shared by permutation groups and Möbius groups.
/// Order-2 groups are always Cyclic(2); the Klein four-group is Dihedral(2).
GroupType classify_census(int group_order, const OrderCensus& census, bool abelian);

}  // namespace dessinmetric
