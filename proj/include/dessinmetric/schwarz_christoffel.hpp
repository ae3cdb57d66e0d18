#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>

#include "dessinmetric/moebius.hpp"

namespace dessinmetric::sc {

using Complex = std::complex<double>;

/// Conformal map from the closed upper half-plane onto the 30-60-90 triangle
///   F(z) = A ∫₀^z t^{-1/2} (t+1)^{-2/3} dt,
/// prevertices 0, −1, ∞ going to the right angle, the π/3 corner and the π/6
/// corner. A is fixed by F(−1) = 1, which puts the triangle at 0, 1, −i√3.
struct TriangleMap {
  std::array<moebius::SpherePoint, 3> prevertices;
  std::array<Complex, 3> vertices;
  Complex normalization;
};

const TriangleMap& triangle_map();

/// Interior angles at the three vertices (right, π/3, π/6 corners),
/// computed from the vertex positions.
std::array<double, 3> interior_angles(const TriangleMap& map);

/// Throws Error{BranchViolation} for Im z < 0.
Complex sc_forward(Complex z);
/// A·z^{-1/2}(z+1)^{-2/3}, the derivative of sc_forward.
Complex sc_derivative(Complex z);

/// Newton iteration on sc_forward from a five-point start set. Throws
/// Error{NoConvergence} if none of the starts converges.
Complex sc_inverse(Complex w);

/// True for points of the closed triangle, up to `tol`.
bool in_triangle(Complex w, double tol = 1e-9);

/// Butterfly made of t⁺ (the triangle above) and t⁻, its mirror image
/// across the hypotenuse, which joins the π/6 corner (black vertex) to the
/// π/3 corner (center). The right-angle corners are white vertices.
struct Butterfly {
  Complex white_positive;
  Complex white_negative;
  Complex black;
  Complex center;
};

const Butterfly& butterfly();

/// Reflection across the shared edge, exchanging t⁺ and t⁻.
Complex reflect_across_shared_edge(Complex p);

/// Belyi map of one butterfly onto the sphere: t⁺ goes to the upper
/// half-plane through sc_inverse and z ↦ z/(z+1), which sends white, black
/// and center to 0, 1, ∞; t⁻ goes to the lower half-plane by reflection.
/// The shared edge lands on the real segment (1, ∞).
/// Throws Error{OutsideButterfly}.
moebius::SpherePoint butterfly_belyi(Complex p);

/// Image polygon plus F(x) for `samples` boundary points per side, as JSON.
std::string demo_json(int samples = 30);

/// Adaptive Gauss–Legendre quadrature of a smooth complex integrand.
Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace dessinmetric::sc
