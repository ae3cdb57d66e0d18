#pragma once

#include <string>
#include <vector>

#include "dessinmetric/group_type.hpp"
#include "dessinmetric/moebius.hpp"

namespace dessinmetric::groups {

using moebius::MoebiusTransform;
using moebius::SpherePoint;

inline constexpr int kDefaultClosureCap = 200;

/// A finite group of Möbius transformations as an explicit element list.
class FiniteMoebiusGroup {
 public:
  /// Takes an already closed, deduplicated element list (identity first).
  /// Use closure() to build one from generators.
  FiniteMoebiusGroup(std::vector<MoebiusTransform> elements, GroupType type);

  const std::vector<MoebiusTransform>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const GroupType& type() const { return type_; }

  /// {g ∘ h ∘ g⁻¹ : h in this group}; the type is unchanged.
  FiniteMoebiusGroup conjugated_by(const MoebiusTransform& g) const;

 private:
  std::vector<MoebiusTransform> elements_;
  GroupType type_;
};

/// Breadth-first product closure with projective deduplication.
/// Throws Error{InfiniteGroup} past `cap` elements and
/// Error{NumericalAmbiguity} when two candidates are close but not equal.
FiniteMoebiusGroup closure(const std::vector<MoebiusTransform>& generators,
                           int cap = kDefaultClosureCap);

/// closure(standard_generators(type)).
FiniteMoebiusGroup standard_group(const GroupType& type);

/// Census and abelianness of the element list, classified.
GroupType classify(const std::vector<MoebiusTransform>& elements);

/// φ with φ ∘ G ∘ φ⁻¹ projectively unitary.
struct Conjugator {
  MoebiusTransform phi;
};

/// (1/|G|) Σ AᴴA over the normalized lifts, as [h00, h01, h10, h11].
std::array<moebius::Complex, 4> averaged_hermitian_form(const FiniteMoebiusGroup& g);

/// Factors the averaged Hermitian form as PᴴP (Cholesky) and returns P.
Conjugator unitarize(const FiniteMoebiusGroup& g);

bool is_in_SO3(const FiniteMoebiusGroup& g, double tol = 1e-8);
/// Largest unitarity defect over the elements.
double max_unitarity_defect(const FiniteMoebiusGroup& g);

struct Orbit {
  std::vector<SpherePoint> points;
  int stabilizer_order = 0;
};

/// Orbits of the fixed points of non-identity elements, largest first.
struct OrbitData {
  std::vector<Orbit> orbits;
  int group_order = 0;
};

/// Throws Error{TrivialGroup} for the one-element group.
OrbitData orbit_analysis(const FiniteMoebiusGroup& g);

/// {"type": "S4", "elements": [matrix, ...]}
std::string to_json(const FiniteMoebiusGroup& g);
/// Accepts either the group object above or a bare list of generator
/// matrices, and returns the closure.
FiniteMoebiusGroup group_from_json(std::string_view text);
/// Generator list from a JSON list of matrices.
std::vector<MoebiusTransform> generators_from_json(std::string_view text);

}  // namespace dessinmetric::groups
