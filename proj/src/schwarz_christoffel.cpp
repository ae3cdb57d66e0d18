#include "dessinmetric/schwarz_christoffel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "json.hpp"

#include "dessinmetric/error.hpp"

namespace dessinmetric::sc {

namespace {

using std::numbers::pi;

constexpr int kGaussPoints = 16;
constexpr int kMaxDepth = 40;
// Beyond this modulus the integral is taken from the vertex at ∞ inwards.
constexpr double kFarField = 2.0;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[static_cast<std::size_t>(i)] = x;
      r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

Complex gauss(const std::function<Complex(double)>& f, double a, double b) {
  const auto& rule = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    sum += rule.weights[static_cast<std::size_t>(i)] * f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
  }
  return half * sum;
}

Complex adaptive(const std::function<Complex(double)>& f, double a, double b, Complex whole, double tol,
                 int depth) {
  const double mid = 0.5 * (a + b);
  const Complex left = gauss(f, a, mid);
  const Complex right = gauss(f, mid, b);
  if (depth >= kMaxDepth || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive(f, a, mid, left, 0.5 * tol, depth + 1) + adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

/// t^alpha with the branch cut along the negative imaginary axis, so the
/// closed upper half-plane has arguments in [0, π].
Complex branch_pow(Complex t, double alpha) {
  double arg = std::atan2(t.imag(), t.real());
  if (arg < -0.5 * pi) arg += 2.0 * pi;
  return std::polar(std::pow(std::abs(t), alpha), alpha * arg);
}

Complex raw_integrand(Complex t) { return branch_pow(t, -0.5) * branch_pow(t + 1.0, -2.0 / 3.0); }

/// ∫₀^z along the segment, with t = zσ² removing the t^{-1/2} singularity.
Complex from_zero(Complex z) {
  if (z == Complex(0.0)) return 0.0;
  const Complex root = branch_pow(z, 0.5);
  return integrate([&](double s) { return 2.0 * root * branch_pow(z * (s * s) + 1.0, -2.0 / 3.0); }, 0.0, 1.0);
}

/// ∫_{−1}^z along the segment, with t = −1 + (z+1)σ³.
Complex from_minus_one(Complex z) {
  const Complex shift = z + 1.0;
  if (shift == Complex(0.0)) return 0.0;
  const Complex cube_root = branch_pow(shift, 1.0 / 3.0);
  return integrate([&](double s) { return 3.0 * cube_root * branch_pow(-1.0 + shift * (s * s * s), -0.5); }, 0.0,
                   1.0);
}

/// ∫_z^∞ along the outward ray, with t = z τ^{-6}.
Complex to_infinity(Complex z) {
  const Complex root = branch_pow(z, 0.5);
  return integrate(
      [&](double s) {
        const double s6 = s * s * s * s * s * s;
        return 6.0 * root * branch_pow(z + s6, -2.0 / 3.0);
      },
      0.0, 1.0);
}

double segment_distance(Complex p, Complex q, Complex x) {
  const Complex d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(x - p);
  const double s = std::clamp(((x - p) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p + s * d - x);
}

struct RawConstants {
  Complex at_minus_one;
  Complex at_infinity;
};

const RawConstants& raw_constants() {
  static const RawConstants c = [] {
    RawConstants r;
    r.at_minus_one = from_zero(Complex(-0.5)) - from_minus_one(Complex(-0.5));
    r.at_infinity = from_zero(Complex(1.0)) + to_infinity(Complex(1.0));
    return r;
  }();
  return c;
}

/// ∫₀^z t^{-1/2}(t+1)^{-2/3} dt for z in the closed upper half-plane.
Complex raw_forward(Complex z) {
  const auto& c = raw_constants();
  if (std::abs(z) >= kFarField) return c.at_infinity - to_infinity(z);
  const double clearance_from_zero_path = segment_distance(0.0, z, -1.0);
  const double clearance_from_minus_one_path = segment_distance(-1.0, z, 0.0);
  if (clearance_from_zero_path >= clearance_from_minus_one_path) return from_zero(z);
  return c.at_minus_one + from_minus_one(z);
}

/// Forward map without the half-plane check, used inside Newton iterations.
Complex forward_unchecked(Complex z) { return triangle_map().normalization * raw_forward(z); }

Complex clamp_to_upper(Complex z) { return {z.real(), std::max(z.imag(), 0.0)}; }

}  // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b, double tol) {
  return adaptive(f, a, b, gauss(f, a, b), tol, 0);
}

const TriangleMap& triangle_map() {
  static const TriangleMap map = [] {
    const auto& c = raw_constants();
    TriangleMap m;
    m.prevertices = {moebius::SpherePoint(0.0), moebius::SpherePoint(-1.0), moebius::SpherePoint::infinity()};
    m.normalization = 1.0 / c.at_minus_one;
    m.vertices = {Complex(0.0), m.normalization * c.at_minus_one, m.normalization * c.at_infinity};
    return m;
  }();
  return map;
}

std::array<double, 3> interior_angles(const TriangleMap& map) {
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex v = map.vertices[k];
    const Complex e1 = map.vertices[(k + 1) % 3] - v;
    const Complex e2 = map.vertices[(k + 2) % 3] - v;
    out[k] = std::abs(std::arg(e2 / e1));
  }
  return out;
}

Complex sc_forward(Complex z) {
  if (z.imag() < 0.0) throw Error(Errc::BranchViolation, "sc_forward is defined on the closed upper half-plane");
  return forward_unchecked(z);
}

Complex sc_derivative(Complex z) { return triangle_map().normalization * raw_integrand(z); }

Complex sc_inverse(Complex w) {
  const auto& map = triangle_map();
  const Complex scale = map.normalization;
  const Complex far_vertex = map.vertices[2];
  // Local expansions at the three corners plus two interior points.
  std::vector<Complex> starts;
  const Complex near_zero = w / (2.0 * scale);
  starts.push_back(near_zero * near_zero);
  const Complex near_minus_one = (w - 1.0) / (3.0 * scale * Complex(0.0, -1.0));
  starts.push_back(-1.0 + near_minus_one * near_minus_one * near_minus_one);
  if (std::abs(far_vertex - w) > 0.0) starts.push_back(std::pow(6.0 * scale / (far_vertex - w), 6.0));
  starts.emplace_back(0.0, 1.0);
  starts.emplace_back(-0.5, 0.5);
  for (auto& s : starts) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) s = Complex(0.0, 1.0);
    if (s.imag() <= 0.0) s = Complex(s.real(), std::max(1e-3, std::abs(s.imag())));
  }
  std::stable_sort(starts.begin(), starts.end(), [&](Complex lhs, Complex rhs) {
    return std::abs(forward_unchecked(lhs) - w) < std::abs(forward_unchecked(rhs) - w);
  });

  const double tol = 1e-13 * std::max(1.0, std::abs(w));
  for (Complex z : starts) {
    for (int iter = 0; iter < 100; ++iter) {
      const Complex residual = forward_unchecked(z) - w;
      if (std::abs(residual) <= tol) return clamp_to_upper(z);
      const Complex slope = sc_derivative(z);
      if (!std::isfinite(std::abs(slope)) || std::abs(slope) == 0.0) break;
      Complex next = z - residual / slope;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (next.imag() < 0.0) next = Complex(next.real(), 0.1 * z.imag());
      if (std::abs(next - z) <= 1e-16 * std::max(1.0, std::abs(z))) {
        if (std::abs(forward_unchecked(next) - w) <= 1e-11 * std::max(1.0, std::abs(w))) return clamp_to_upper(next);
        break;
      }
      z = next;
    }
  }
  throw Error(Errc::NoConvergence, "Newton iteration for the inverse Schwarz-Christoffel map did not converge");
}

bool in_triangle(Complex w, double tol) {
  const auto& v = triangle_map().vertices;
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex a = v[k];
    const Complex b = v[(k + 1) % 3];
    const Complex c = v[(k + 2) % 3];
    const auto side = [&](Complex p) { return ((b - a) * std::conj(p - a)).imag() / std::abs(b - a); };
    // Signed distance of w to edge ab, oriented so the opposite corner is positive.
    const double sign = side(c) >= 0.0 ? 1.0 : -1.0;
    if (sign * side(w) < -tol) return false;
  }
  return true;
}

Complex reflect_across_shared_edge(Complex p) {
  const auto& v = triangle_map().vertices;
  const Complex a = v[1];
  const Complex edge = v[2] - v[1];
  return a + edge * std::conj((p - a) / edge);
}

const Butterfly& butterfly() {
  static const Butterfly b = [] {
    const auto& v = triangle_map().vertices;
    return Butterfly{v[0], reflect_across_shared_edge(v[0]), v[2], v[1]};
  }();
  return b;
}

moebius::SpherePoint butterfly_belyi(Complex p) {
  const auto& b = butterfly();
  constexpr double kVertexTol = 1e-14;
  if (std::abs(p - b.white_positive) <= kVertexTol || std::abs(p - b.white_negative) <= kVertexTol) {
    return Complex(0.0);
  }
  if (std::abs(p - b.black) <= kVertexTol) return Complex(1.0);
  if (std::abs(p - b.center) <= kVertexTol) return moebius::SpherePoint::infinity();
  // Upper half-plane normalization: (0, ∞, −1) ↦ (0, 1, ∞).
  const auto normalize = [](Complex z) -> moebius::SpherePoint {
    if (z == Complex(-1.0)) return moebius::SpherePoint::infinity();
    return z / (z + 1.0);
  };
  if (in_triangle(p)) return normalize(sc_inverse(p));
  const Complex mirrored = reflect_across_shared_edge(p);
  if (in_triangle(mirrored)) {
    const auto image = normalize(sc_inverse(mirrored));
    if (image.is_infinite()) return image;
    return std::conj(image.value());
  }
  throw Error(Errc::OutsideButterfly, "point is outside the butterfly");
}

std::string demo_json(int samples) {
  const auto& map = triangle_map();
  nlohmann::ordered_json doc;
  auto polygon = nlohmann::json::array();
  for (const auto& v : map.vertices) polygon.push_back({v.real(), v.imag()});
  doc["polygon"] = polygon;
  doc["prevertices"] = {"0", "-1", "inf"};
  const auto angles = interior_angles(map);
  doc["interior_angles"] = {angles[0], angles[1], angles[2]};
  doc["normalization"] = {map.normalization.real(), map.normalization.imag()};

  auto table = nlohmann::json::array();
  const auto add = [&](const char* side, double x) {
    const Complex w = sc_forward(Complex(x));
    table.push_back({{"side", side}, {"x", x}, {"w", {w.real(), w.imag()}}});
  };
  for (int i = 1; i <= samples; ++i) {
    const double s = static_cast<double>(i) / (samples + 1);
    add("(-1,0)", -s);
    add("(0,inf)", s / (1.0 - s));
    add("(-inf,-1)", -1.0 - s / (1.0 - s));
  }
  doc["boundary"] = table;
  return doc.dump(2);
}

}  // namespace dessinmetric::sc
