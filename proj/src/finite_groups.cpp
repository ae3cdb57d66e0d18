#include "dessinmetric/finite_groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "json.hpp"

#include "dessinmetric/error.hpp"

namespace dessinmetric::groups {

using moebius::Complex;

namespace {

constexpr double kPointTolerance = 1e-8;

enum class Match { New, Existing, Ambiguous };

Match find_element(const std::vector<MoebiusTransform>& elements, const MoebiusTransform& m) {
  bool near = false;
  for (const auto& e : elements) {
    const double dist = e.projective_distance(m);
    if (dist < moebius::kProjectiveTolerance) return Match::Existing;
    if (dist < 10.0 * moebius::kProjectiveTolerance) near = true;
  }
  return near ? Match::Ambiguous : Match::New;
}

}  // namespace

FiniteMoebiusGroup::FiniteMoebiusGroup(std::vector<MoebiusTransform> elements, GroupType type)
    : elements_(std::move(elements)), type_(type) {}

FiniteMoebiusGroup FiniteMoebiusGroup::conjugated_by(const MoebiusTransform& g) const {
  std::vector<MoebiusTransform> out;
  out.reserve(elements_.size());
  for (const auto& h : elements_) out.push_back(moebius::conjugate(h, g));
  return {std::move(out), type_};
}

GroupType classify(const std::vector<MoebiusTransform>& elements) {
  OrderCensus census;
  for (const auto& e : elements) {
    const auto order = moebius::element_order(e, static_cast<int>(elements.size()));
    ++census[order.value_or(0)];
  }
  bool abelian = true;
  for (std::size_t i = 0; i < elements.size() && abelian; ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (!(moebius::compose(elements[i], elements[j]) == moebius::compose(elements[j], elements[i]))) {
        abelian = false;
        break;
      }
    }
  }
  return classify_census(static_cast<int>(elements.size()), census, abelian);
}

FiniteMoebiusGroup closure(const std::vector<MoebiusTransform>& generators, int cap) {
  std::vector<MoebiusTransform> elements{MoebiusTransform()};
  std::deque<MoebiusTransform> frontier{MoebiusTransform()};
  while (!frontier.empty()) {
    const MoebiusTransform current = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      const MoebiusTransform product = moebius::compose(g, current);
      const Complex trace = product.a() + product.d();
      if (std::abs(trace.imag()) > 1e-6 || std::abs(trace.real()) > 2.0 + 1e-6) {
        throw Error(Errc::InfiniteGroup, "generated a non-elliptic element");
      }
      switch (find_element(elements, product)) {
        case Match::Existing:
          break;
        case Match::Ambiguous:
          throw Error(Errc::NumericalAmbiguity,
                      "two group elements differ by less than 10x the deduplication tolerance");
        case Match::New:
          elements.push_back(product);
          frontier.push_back(product);
          if (static_cast<int>(elements.size()) > cap) {
            throw Error(Errc::InfiniteGroup,
                        "closure exceeded " + std::to_string(cap) + " elements");
          }
          break;
      }
    }
  }
  const GroupType type = classify(elements);
  return {std::move(elements), type};
}

FiniteMoebiusGroup standard_group(const GroupType& type) {
  return closure(moebius::standard_generators(type));
}

std::array<Complex, 4> averaged_hermitian_form(const FiniteMoebiusGroup& g) {
  std::array<Complex, 4> h{};
  for (const auto& e : g.elements()) {
    const auto [a, b, c, d] = e.entries();
    h[0] += std::norm(a) + std::norm(c);
    h[1] += std::conj(a) * b + std::conj(c) * d;
    h[3] += std::norm(b) + std::norm(d);
  }
  const double inv = 1.0 / static_cast<double>(g.order());
  for (auto& x : h) x *= inv;
  h[2] = std::conj(h[1]);
  return h;
}

Conjugator unitarize(const FiniteMoebiusGroup& g) {
  const auto h = averaged_hermitian_form(g);
  // H = L Lᴴ with L lower triangular; P = Lᴴ then satisfies H = PᴴP and
  // (P A P⁻¹)ᴴ (P A P⁻¹) = P⁻ᴴ AᴴHA P⁻¹ = I for every A in the group.
  const double l00 = std::sqrt(h[0].real());
  const Complex l10 = h[2] / l00;
  const double l11 = std::sqrt(h[3].real() - std::norm(l10));
  return {MoebiusTransform(l00, std::conj(l10), 0.0, l11)};
}

double max_unitarity_defect(const FiniteMoebiusGroup& g) {
  double worst = 0.0;
  for (const auto& e : g.elements()) worst = std::max(worst, moebius::unitarity_defect(e));
  return worst;
}

bool is_in_SO3(const FiniteMoebiusGroup& g, double tol) { return max_unitarity_defect(g) < tol; }

OrbitData orbit_analysis(const FiniteMoebiusGroup& g) {
  if (g.order() <= 1) throw Error(Errc::TrivialGroup, "orbit analysis needs a non-trivial group");

  std::vector<SpherePoint> fixed;
  for (const auto& e : g.elements()) {
    if (e.is_identity()) continue;
    const auto fp = moebius::fixed_points(e);
    const auto* points = std::get_if<std::vector<SpherePoint>>(&fp);
    if (points == nullptr) continue;
    for (const auto& p : *points) {
      const bool seen = std::any_of(fixed.begin(), fixed.end(), [&](const SpherePoint& q) {
        return moebius::chordal_distance(p, q) < kPointTolerance;
      });
      if (!seen) fixed.push_back(p);
    }
  }

  OrbitData data;
  data.group_order = g.order();
  std::vector<bool> assigned(fixed.size(), false);
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (assigned[i]) continue;
    Orbit orbit;
    int stabilizer = 0;
    for (const auto& h : g.elements()) {
      const SpherePoint image = h(fixed[i]);
      if (moebius::chordal_distance(image, fixed[i]) < kPointTolerance) ++stabilizer;
      const bool seen = std::any_of(orbit.points.begin(), orbit.points.end(), [&](const SpherePoint& q) {
        return moebius::chordal_distance(image, q) < kPointTolerance;
      });
      if (!seen) orbit.points.push_back(image);
    }
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      for (const auto& q : orbit.points) {
        if (moebius::chordal_distance(fixed[j], q) < kPointTolerance) assigned[j] = true;
      }
    }
    orbit.stabilizer_order = stabilizer;
    if (static_cast<int>(orbit.points.size()) * stabilizer != g.order()) {
      throw Error(Errc::NumericalAmbiguity, "orbit size times stabilizer order differs from the group order");
    }
    data.orbits.push_back(std::move(orbit));
  }
  std::stable_sort(data.orbits.begin(), data.orbits.end(), [](const Orbit& lhs, const Orbit& rhs) {
    return lhs.points.size() > rhs.points.size();
  });
  return data;
}

std::string to_json(const FiniteMoebiusGroup& g) {
  nlohmann::ordered_json doc;
  doc["type"] = g.type().tag();
  auto elements = nlohmann::json::array();
  for (const auto& e : g.elements()) elements.push_back(nlohmann::json::parse(moebius::to_json(e)));
  doc["elements"] = std::move(elements);
  return doc.dump();
}

std::vector<MoebiusTransform> generators_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  if (doc.is_object()) {
    if (!doc.contains("elements") && !doc.contains("generators")) {
      throw Error(Errc::MalformedInput, "expected \"elements\" or \"generators\"");
    }
    doc = doc.contains("generators") ? doc["generators"] : doc["elements"];
  }
  if (!doc.is_array()) throw Error(Errc::MalformedInput, "expected a list of matrices");
  std::vector<MoebiusTransform> out;
  for (const auto& m : doc) out.push_back(moebius::matrix_from_json(m.dump()));
  return out;
}

FiniteMoebiusGroup group_from_json(std::string_view text) {
  return closure(generators_from_json(text));
}

}  // namespace dessinmetric::groups
