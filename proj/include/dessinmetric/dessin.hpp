#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dessinmetric/group_type.hpp"

namespace dessinmetric::dessin {

/// A permutation of {0, ..., n-1}; perm[i] is the image of i.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
/// (lhs ∘ rhs)(x) = lhs(rhs(x)).
Permutation compose(const Permutation& lhs, const Permutation& rhs);
Permutation inverse(const Permutation& p);
/// Cycle lengths in order of smallest element.
std::vector<int> cycle_lengths(const Permutation& p);
/// For every point, the index of the cycle containing it.
std::vector<int> cycle_index(const Permutation& p);
int cycle_count(const Permutation& p);
bool is_permutation(std::span<const int> p);

/// Bicolored map encoded by one dart per edge. sigma_white and sigma_black
/// rotate darts counterclockwise around white and black vertices. Darts are
/// 0-based internally and 1-based in the file format.
class Dessin {
 public:
  /// Throws Error{NotAPermutation} or Error{Disconnected}.
  Dessin(Permutation sigma_white, Permutation sigma_black);

  int dart_count() const { return static_cast<int>(sigma_white_.size()); }
  const Permutation& sigma_white() const { return sigma_white_; }
  const Permutation& sigma_black() const { return sigma_black_; }
  /// sigma_white ∘ sigma_black (sigma_black applied first); its cycles are faces.
  Permutation face_permutation() const { return compose(sigma_white_, sigma_black_); }

 private:
  Permutation sigma_white_;
  Permutation sigma_black_;
};

/// True when the group generated by the permutations is transitive.
bool is_transitive(std::span<const Permutation> generators);

/// Parses the JSON dessin format:
///   {"darts": N, "sigma_white": [[1,2],...], "sigma_black": [[...],...]}
/// with 1-based dart labels. Darts missing from every cycle are fixed.
Dessin parse_dessin(std::string_view text);
/// Canonical JSON form (cycles of length >= 2 only, each starting at its
/// smallest dart).
std::string to_json(const Dessin& d);

int genus(const Dessin& d);

struct Passport {
  std::vector<int> white_degrees;      // sorted descending
  std::vector<int> black_degrees;      // sorted descending
  std::vector<int> face_half_degrees;  // sorted descending
  int degree = 0;
};

Passport passport(const Dessin& d);

enum class Orientation : std::uint8_t { Positive, Negative };

struct Triangle {
  int white_vertex = 0;  // cycle index in sigma_white
  int black_vertex = 0;  // cycle index in sigma_black
  int face = 0;          // cycle index in the face permutation
  Orientation sign = Orientation::Positive;
};

/// Triangle 2d is the positive triangle of dart d and 2d+1 its negative one.
/// Around a white vertex the positive triangle of d fills the corner between
/// sigma_white⁻¹(d) and d; around a black vertex it fills the corner between
/// d and sigma_black(d), where it meets the negative triangle of
/// sigma_black(d) along the black-to-center edge. That pair is a butterfly.
/// Faces are cycles of sigma_white ∘ sigma_black.
struct TriangulatedMap {
  int triangle_count = 0;
  int butterfly_count = 0;
  std::vector<Triangle> triangles;
  std::vector<std::pair<int, int>> butterfly_pairs;  // (positive id, negative id)
};

TriangulatedMap triangulate(const Dessin& d);

/// A finite permutation group given by its full element list.
struct PermGroup {
  std::vector<Permutation> elements;  // identity first
  int order() const { return static_cast<int>(elements.size()); }
};

/// Centralizer of <sigma_white, sigma_black> in the symmetric group on darts,
/// i.e. the orientation- and color-preserving automorphisms of the map.
PermGroup automorphisms(const Dessin& d);

int element_order(const Permutation& p);

/// Uniformly random pair of permutations on `darts` darts, redrawn until
/// the pair acts transitively.
Dessin random_dessin(std::mt19937_64& rng, int darts);
GroupType classify_perm_group(const PermGroup& g);

}  // namespace dessinmetric::dessin
