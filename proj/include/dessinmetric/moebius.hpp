#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dessinmetric/group_type.hpp"

namespace dessinmetric::moebius {

using Complex = std::complex<double>;

/// Two normalized matrices are the same transformation when they agree up
/// to sign within this max-entry distance.
inline constexpr double kProjectiveTolerance = 1e-9;
inline constexpr int kDefaultOrderCap = 120;

/// A point of the Riemann sphere: a finite complex number or ∞.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(double x) : value_(Complex(x, 0.0)) {}  // NOLINT(google-explicit-constructor)

  static SpherePoint infinity() {
    SpherePoint p;
    p.value_.reset();
    return p;
  }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  Complex value() const { return *value_; }

 private:
  std::optional<Complex> value_ = Complex{};
};

/// Chordal distance on the unit sphere (2 between antipodes).
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

/// A point (z, t) of the unit sphere in C × R.
struct EuclideanSpherePoint {
  Complex z;
  double t = 0.0;
};

SpherePoint stereographic(const EuclideanSpherePoint& p);
EuclideanSpherePoint stereographic_inverse(const SpherePoint& q);

/// z ↦ (az+b)/(cz+d), stored with ad − bc = 1. M and −M are the same map;
/// operator== is projective.
class MoebiusTransform {
 public:
  /// Identity.
  MoebiusTransform() = default;
  /// Divides by a square root of ad − bc (the one with non-negative real
  /// part), then fixes the overall sign so the first entry that is not
  /// negligible has positive real part. Throws Error{MalformedInput} for a
  /// singular matrix.
  MoebiusTransform(Complex a, Complex b, Complex c, Complex d);

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  const std::array<Complex, 4>& entries() const { return m_; }

  SpherePoint operator()(const SpherePoint& p) const;
  /// Finite-chart evaluation; the pole maps to ∞.
  SpherePoint apply(Complex z) const { return (*this)(SpherePoint(z)); }

  /// Max-entry distance to the nearest of ±other.
  double projective_distance(const MoebiusTransform& other) const;
  bool is_identity(double tol = kProjectiveTolerance) const;

  friend bool operator==(const MoebiusTransform& lhs, const MoebiusTransform& rhs) {
    return lhs.projective_distance(rhs) < kProjectiveTolerance;
  }

 private:
  std::array<Complex, 4> m_{Complex(1), Complex(0), Complex(0), Complex(1)};
};

/// (lhs ∘ rhs)(z) = lhs(rhs(z)).
MoebiusTransform compose(const MoebiusTransform& lhs, const MoebiusTransform& rhs);
MoebiusTransform inverse(const MoebiusTransform& m);
/// g ∘ m ∘ g⁻¹
MoebiusTransform conjugate(const MoebiusTransform& m, const MoebiusTransform& g);

/// 1/(cz+d)². Throws Error{PoleEvaluation} at z = −d/c.
Complex derivative(const MoebiusTransform& m, Complex z);

/// The transformation sending 0, 1, ∞ to a, b, c. Throws
/// Error{DegenerateTriple} when two of the points coincide.
MoebiusTransform from_triple(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c);

/// z ↦ λz with λ = zeta.
MoebiusTransform rotation(Complex zeta);
/// z ↦ 1/z
MoebiusTransform reciprocal();
/// z ↦ z + shift
MoebiusTransform translation(Complex shift);

/// Smallest n <= cap with mⁿ = id projectively; nullopt means infinite order
/// (or larger than cap).
std::optional<int> element_order(const MoebiusTransform& m, int cap = kDefaultOrderCap);

/// Fixed points on the sphere. All points are fixed by the identity.
struct AllPoints {};
using FixedPoints = std::variant<AllPoints, std::vector<SpherePoint>>;
FixedPoints fixed_points(const MoebiusTransform& m);

/// Generators of the standard copy inside SO(3) of each finite type. For
/// Cyclic(n) and Dihedral(n) the rotation is z ↦ ζz with
/// ζ = exp(2πi·root_index/n); root_index must be coprime to n. Throws
/// Error{UnsupportedType} for Other or an invalid root index.
std::vector<MoebiusTransform> standard_generators(const GroupType& type, int root_index = 1);

/// Largest ‖UᴴU − I‖ over the lift U (max-entry norm). Since det U = 1,
/// this is zero exactly for matrices in SU(2).
double unitarity_defect(const MoebiusTransform& m);

/// Random transformation with entries uniform in the unit disc, redrawn
/// until the matrix condition number is at most max_condition.
MoebiusTransform random_transform(std::mt19937_64& rng, double max_condition = 100.0);
double condition_number(Complex a, Complex b, Complex c, Complex d);

/// [[re,im],[re,im],[re,im],[re,im]] for (a, b, c, d).
std::string to_json(const MoebiusTransform& m);
MoebiusTransform matrix_from_json(std::string_view text);

}  // namespace dessinmetric::moebius
