#include "dessinmetric/moebius.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"

#include "dessinmetric/error.hpp"

namespace dessinmetric::moebius {

namespace {

constexpr double kSignEpsilon = 1e-12;
// Below this |c| (after normalization) a transformation is treated as affine
// when locating fixed points.
constexpr double kAffineThreshold = 1e-13;

double max_abs(const std::array<Complex, 4>& v) {
  double out = 0.0;
  for (const auto& x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite() || q.is_infinite()) {
    const Complex z = p.is_infinite() ? q.value() : p.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  const Complex z = p.value();
  const Complex w = q.value();
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

SpherePoint stereographic(const EuclideanSpherePoint& p) {
  // Projection from the north pole (0, 1). In the northern hemisphere the
  // equivalent form (1+t)/conj(z) avoids the cancellation in 1 − t.
  if (p.t > 0.0) {
    if (std::abs(p.z) == 0.0) return SpherePoint::infinity();
    return SpherePoint((1.0 + p.t) / std::conj(p.z));
  }
  return SpherePoint(p.z / (1.0 - p.t));
}

EuclideanSpherePoint stereographic_inverse(const SpherePoint& q) {
  if (q.is_infinite()) return {Complex(0.0), 1.0};
  const Complex z = q.value();
  const double r2 = std::norm(z);
  return {2.0 * z / (r2 + 1.0), (r2 - 1.0) / (r2 + 1.0)};
}

MoebiusTransform::MoebiusTransform(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-300) || !(std::abs(det) > 1e-14 * scale * scale)) {
    throw Error(Errc::MalformedInput, "singular Moebius matrix");
  }
  Complex root = std::sqrt(det);
  if (root.real() < 0.0 || (root.real() == 0.0 && root.imag() < 0.0)) root = -root;
  m_ = {a / root, b / root, c / root, d / root};
  for (const auto& x : m_) {
    if (std::abs(x) <= kSignEpsilon) continue;
    const bool flip = x.real() < -kSignEpsilon || (std::abs(x.real()) <= kSignEpsilon && x.imag() < 0.0);
    if (flip) {
      for (auto& y : m_) y = -y;
    }
    break;
  }
}

SpherePoint MoebiusTransform::operator()(const SpherePoint& p) const {
  const auto [a, b, c, d] = m_;
  if (p.is_infinite()) {
    if (c == Complex(0.0)) return SpherePoint::infinity();
    return SpherePoint(a / c);
  }
  const Complex z = p.value();
  const Complex den = c * z + d;
  if (den == Complex(0.0)) return SpherePoint::infinity();
  return SpherePoint((a * z + b) / den);
}

double MoebiusTransform::projective_distance(const MoebiusTransform& other) const {
  std::array<Complex, 4> minus{};
  std::array<Complex, 4> plus{};
  for (std::size_t i = 0; i < 4; ++i) {
    minus[i] = m_[i] - other.m_[i];
    plus[i] = m_[i] + other.m_[i];
  }
  return std::min(max_abs(minus), max_abs(plus));
}

bool MoebiusTransform::is_identity(double tol) const {
  return projective_distance(MoebiusTransform()) < tol;
}

MoebiusTransform compose(const MoebiusTransform& lhs, const MoebiusTransform& rhs) {
  const auto [a, b, c, d] = lhs.entries();
  const auto [e, f, g, h] = rhs.entries();
  return {a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h};
}

MoebiusTransform inverse(const MoebiusTransform& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

MoebiusTransform conjugate(const MoebiusTransform& m, const MoebiusTransform& g) {
  return compose(compose(g, m), inverse(g));
}

Complex derivative(const MoebiusTransform& m, Complex z) {
  const Complex den = m.c() * z + m.d();
  if (std::abs(den) == 0.0) throw Error(Errc::PoleEvaluation, "derivative evaluated at the pole");
  return 1.0 / (den * den);
}

MoebiusTransform from_triple(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) {
  constexpr double kDistinct = 1e-12;
  if (chordal_distance(a, b) < kDistinct || chordal_distance(a, c) < kDistinct ||
      chordal_distance(b, c) < kDistinct) {
    throw Error(Errc::DegenerateTriple, "from_triple needs three distinct points");
  }
  // T sends (a, b, c) to (0, 1, ∞); the answer is T⁻¹.
  MoebiusTransform to_standard;
  if (a.is_infinite()) {
    const Complex bv = b.value();
    const Complex cv = c.value();
    to_standard = MoebiusTransform(0.0, bv - cv, 1.0, -cv);
  } else if (b.is_infinite()) {
    to_standard = MoebiusTransform(1.0, -a.value(), 1.0, -c.value());
  } else if (c.is_infinite()) {
    to_standard = MoebiusTransform(1.0, -a.value(), 0.0, b.value() - a.value());
  } else {
    const Complex av = a.value();
    const Complex bv = b.value();
    const Complex cv = c.value();
    to_standard = MoebiusTransform(bv - cv, -av * (bv - cv), bv - av, -cv * (bv - av));
  }
  return inverse(to_standard);
}

MoebiusTransform rotation(Complex zeta) {
  const Complex s = std::sqrt(zeta);
  return {s, 0.0, 0.0, 1.0 / s};
}

MoebiusTransform reciprocal() { return {0.0, 1.0, 1.0, 0.0}; }

MoebiusTransform translation(Complex shift) { return {1.0, shift, 0.0, 1.0}; }

std::optional<int> element_order(const MoebiusTransform& m, int cap) {
  // Elliptic elements have real trace in [-2, 2]; anything else never returns to the identity,
  // and loxodromic powers would eventually overflow.
  const Complex trace = m.a() + m.d();
  if (std::abs(trace.imag()) > 1e-6 || std::abs(trace.real()) > 2.0 + 1e-6) return std::nullopt;
  MoebiusTransform power = m;
  for (int n = 1; n <= cap; ++n) {
    if (power.is_identity()) return n;
    power = compose(power, m);
  }
  return std::nullopt;
}

FixedPoints fixed_points(const MoebiusTransform& m) {
  if (m.is_identity()) return AllPoints{};
  const auto [a, b, c, d] = m.entries();
  std::vector<SpherePoint> out;
  if (std::abs(c) < kAffineThreshold) {
    // Affine: ∞ is fixed; (d - a) z = b gives the other one.
    out.push_back(SpherePoint::infinity());
    const Complex slope = d - a;
    if (std::abs(slope) > 1e-12) out.emplace_back(b / slope);
    return out;
  }
  // c z² + (d − a) z − b = 0, discriminant (a + d)² − 4 since ad − bc = 1.
  const Complex p = d - a;
  const Complex disc = (a + d) * (a + d) - 4.0;
  if (std::abs(disc) < 1e-12) {
    out.emplace_back(-p / (2.0 * c));
    return out;
  }
  Complex root = std::sqrt(disc);
  // Stable quadratic formula: pick the sign avoiding cancellation.
  if (std::real(std::conj(p) * root) < 0.0) root = -root;
  const Complex q = -0.5 * (p + root);
  out.emplace_back(q / c);
  if (std::abs(q) == 0.0) {
    out.push_back(SpherePoint::infinity());
  } else {
    out.emplace_back(-b / q);
  }
  return out;
}

std::vector<MoebiusTransform> standard_generators(const GroupType& type, int root_index) {
  using std::numbers::pi;
  const auto root_of_unity = [](int n, int k) {
    return std::polar(1.0, 2.0 * pi * static_cast<double>(k) / static_cast<double>(n));
  };
  switch (type.kind) {
    case GroupType::Kind::Cyclic:
    case GroupType::Kind::Dihedral: {
      const int n = type.n;
      if (n < 1 || (type.kind == GroupType::Kind::Dihedral && n < 2)) {
        throw Error(Errc::UnsupportedType, "invalid group size " + type.tag());
      }
      if (std::gcd(root_index, n) != 1) {
        throw Error(Errc::UnsupportedType, "root index must be coprime to n");
      }
      std::vector<MoebiusTransform> gens{rotation(root_of_unity(n, root_index))};
      if (type.kind == GroupType::Kind::Dihedral) gens.push_back(reciprocal());
      return gens;
    }
    case GroupType::Kind::A4: {
      const double r2 = std::sqrt(2.0);
      return {rotation(root_of_unity(3, 1)), MoebiusTransform(1.0, r2, r2, -1.0)};
    }
    case GroupType::Kind::S4:
      return {rotation(Complex(0.0, 1.0)), MoebiusTransform(1.0, 1.0, 1.0, -1.0)};
    case GroupType::Kind::A5: {
      // Rotation by a primitive fifth root δ together with
      // z ↦ (z + Δ)/(Δz − 1), Δ = √(1 − δ − 1/δ); the principal branch of
      // the square root is the one used, and its closure has 60 elements.
      const Complex delta = root_of_unity(5, 1);
      const Complex big_delta = std::sqrt(1.0 - delta - 1.0 / delta);
      return {rotation(delta), MoebiusTransform(1.0, big_delta, big_delta, -1.0)};
    }
    case GroupType::Kind::Other:
      break;
  }
  throw Error(Errc::UnsupportedType, "no standard generators for group type Other");
}

double unitarity_defect(const MoebiusTransform& m) {
  const auto [a, b, c, d] = m.entries();
  // UᴴU for U = [[a, b], [c, d]].
  const Complex h00 = std::norm(a) + std::norm(c);
  const Complex h01 = std::conj(a) * b + std::conj(c) * d;
  const Complex h11 = std::norm(b) + std::norm(d);
  return max_abs({h00 - 1.0, h01, std::conj(h01), h11 - 1.0});
}

double condition_number(Complex a, Complex b, Complex c, Complex d) {
  // Singular values s1 >= s2 satisfy s1² + s2² = ‖M‖_F² and s1·s2 = |det M|.
  const double frob2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = std::abs(a * d - b * c);
  if (det == 0.0) return std::numeric_limits<double>::infinity();
  const double disc = std::sqrt(std::max(0.0, frob2 * frob2 - 4.0 * det * det));
  const double s1 = std::sqrt(0.5 * (frob2 + disc));
  return s1 * s1 / det;
}

MoebiusTransform random_transform(std::mt19937_64& rng, double max_condition) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto disc_sample = [&] {
    for (;;) {
      const Complex z(unit(rng), unit(rng));
      if (std::norm(z) <= 1.0) return z;
    }
  };
  for (;;) {
    const Complex a = disc_sample();
    const Complex b = disc_sample();
    const Complex c = disc_sample();
    const Complex d = disc_sample();
    if (condition_number(a, b, c, d) <= max_condition) return {a, b, c, d};
  }
}

std::string to_json(const MoebiusTransform& m) {
  auto out = nlohmann::json::array();
  for (const auto& x : m.entries()) out.push_back({x.real(), x.imag()});
  return out.dump();
}

MoebiusTransform matrix_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  if (!doc.is_array() || doc.size() != 4) {
    throw Error(Errc::MalformedInput, "a matrix is a list of four [re, im] pairs");
  }
  std::array<Complex, 4> e{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& pair = doc[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw Error(Errc::MalformedInput, "matrix entries must be [re, im] number pairs");
    }
    e[i] = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return {e[0], e[1], e[2], e[3]};
}

}  // namespace dessinmetric::moebius
