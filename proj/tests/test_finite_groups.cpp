#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numbers>
#include <random>

#include "dessinmetric/error.hpp"
#include "dessinmetric/finite_groups.hpp"

using namespace dessinmetric;
using namespace dessinmetric::groups;
using moebius::Complex;

namespace {

std::vector<std::size_t> orbit_sizes(const OrbitData& d) {
  std::vector<std::size_t> out;
  for (const auto& o : d.orbits) out.push_back(o.points.size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::map<int, int> census(const FiniteMoebiusGroup& g) {
  std::map<int, int> out;
  for (const auto& e : g.elements()) out[moebius::element_order(e).value()]++;
  return out;
}

// Test-side unitarity measure: max entry of UᴴU − I for the det-1 lift.
double unitarity(const MoebiusTransform& m) {
  const auto [a, b, c, d] = m.entries();
  const Complex p00 = std::conj(a) * a + std::conj(c) * c - 1.0;
  const Complex p01 = std::conj(a) * b + std::conj(c) * d;
  const Complex p11 = std::conj(b) * b + std::conj(d) * d - 1.0;
  return std::max({std::abs(p00), std::abs(p01), std::abs(p11)});
}

const std::vector<GroupType> kStandardTypes{
    GroupType::cyclic(2), GroupType::cyclic(3), GroupType::cyclic(5), GroupType::cyclic(6),
    GroupType::dihedral(2), GroupType::dihedral(3), GroupType::dihedral(6),
    GroupType::a4(), GroupType::s4(), GroupType::a5()};

}  // namespace

TEST_CASE("closure orders of the standard groups") {
  const std::map<std::string, int> expected{{"C2", 2}, {"C3", 3}, {"C5", 5}, {"C6", 6}, {"D2", 4},
                                            {"D3", 6}, {"D6", 12}, {"A4", 12}, {"S4", 24}, {"A5", 60}};
  for (const auto& t : kStandardTypes) {
    const auto g = standard_group(t);
    CHECK(g.order() == expected.at(t.tag()));
    CHECK(g.type() == t);
    CHECK(g.elements().front().is_identity());
  }
}

TEST_CASE("closure is closed, idempotent, and rejects infinite groups") {
  for (const auto& t : kStandardTypes) {
    const auto g = standard_group(t);
    const auto& els = g.elements();
    for (std::size_t i = 0; i < els.size(); i += 3) {
      for (std::size_t j = 0; j < els.size(); j += 2) {
        const auto p = moebius::compose(els[i], els[j]);
        CHECK(std::any_of(els.begin(), els.end(), [&](const auto& e) { return e == p; }));
      }
      const auto inv = moebius::inverse(els[i]);
      CHECK(std::any_of(els.begin(), els.end(), [&](const auto& e) { return e == inv; }));
    }
    CHECK(closure(els).order() == g.order());
  }

  const auto trivial = closure({MoebiusTransform()});
  CHECK(trivial.order() == 1);
  CHECK(trivial.type() == GroupType::cyclic(1));

  const auto expect_code = [](const std::vector<MoebiusTransform>& gens, Errc code) {
    try {
      closure(gens);
      FAIL("closure should have thrown");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect_code({MoebiusTransform(2.0, 0.0, 0.0, 1.0)}, Errc::InfiniteGroup);
  expect_code({moebius::translation(1.0)}, Errc::InfiniteGroup);
  // Elliptic of irrational angle: every element is elliptic, but the group never closes.
  expect_code({moebius::rotation(std::polar(1.0, 1.0))}, Errc::InfiniteGroup);
}

TEST_CASE("classification from element lists") {
  CHECK(classify(standard_group(GroupType::dihedral(2)).elements()) == GroupType::dihedral(2));
  CHECK(classify(standard_group(GroupType::cyclic(2)).elements()) == GroupType::cyclic(2));
  CHECK(classify(standard_group(GroupType::a5()).elements()) == GroupType::a5());

  // Census of the icosahedral group computed from the elements themselves.
  const auto a5 = census(standard_group(GroupType::a5()));
  CHECK(a5 == std::map<int, int>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});
  const auto a4 = census(standard_group(GroupType::a4()));
  CHECK(a4 == std::map<int, int>{{1, 1}, {2, 3}, {3, 8}});
  const auto s4 = census(standard_group(GroupType::s4()));
  CHECK(s4 == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
}

TEST_CASE("unitarization") {
  const auto so3 = standard_group(GroupType::s4());
  CHECK(is_in_SO3(so3));
  const auto h = averaged_hermitian_form(so3);
  CHECK(std::abs(h[0] - 1.0) < 1e-12);
  CHECK(std::abs(h[1]) < 1e-12);
  CHECK(std::abs(h[3] - 1.0) < 1e-12);
  CHECK(unitarize(so3).phi.is_identity(1e-10));
  CHECK(is_in_SO3(closure({MoebiusTransform()})));

  const auto shift3 = moebius::translation(3.0);
  const auto c4 = standard_group(GroupType::cyclic(4)).conjugated_by(moebius::inverse(shift3));
  CHECK_FALSE(is_in_SO3(c4));
  const auto c4u = c4.conjugated_by(unitarize(c4).phi);
  for (const auto& e : c4u.elements()) CHECK(unitarity(e) < 1e-10);
  CHECK(is_in_SO3(c4u));

  const auto scale2 = MoebiusTransform(std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
  const auto s4 = standard_group(GroupType::s4()).conjugated_by(moebius::inverse(scale2));
  CHECK_FALSE(is_in_SO3(s4));
  const auto s4u = s4.conjugated_by(unitarize(s4).phi);
  CHECK(s4u.order() == 24);
  for (const auto& e : s4u.elements()) CHECK(unitarity(e) < 1e-10);

  std::mt19937_64 rng(11);
  for (const auto& t : {GroupType::cyclic(3), GroupType::dihedral(4), GroupType::a4(), GroupType::s4(), GroupType::a5()}) {
    const auto base = standard_group(t);
    for (int k = 0; k < 3; ++k) {
      const auto m = moebius::random_transform(rng);
      const auto conj = base.conjugated_by(moebius::inverse(m));
      const auto fixed = conj.conjugated_by(unitarize(conj).phi);
      CHECK(is_in_SO3(fixed, 1e-8));
      CHECK(max_unitarity_defect(fixed) < 1e-8);
      CHECK(census(fixed) == census(base));
      CHECK(census(conj) == census(base));
    }
  }
}

TEST_CASE("orbit analysis of the standard groups") {
  using V = std::vector<std::size_t>;
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::dihedral(6)))) == V{6, 6, 2});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::dihedral(3)))) == V{3, 3, 2});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::dihedral(2)))) == V{2, 2, 2});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::a4()))) == V{6, 4, 4});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::s4()))) == V{12, 8, 6});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::a5()))) == V{30, 20, 12});
  CHECK(orbit_sizes(orbit_analysis(standard_group(GroupType::cyclic(5)))) == V{1, 1});
  CHECK_THROWS_AS(orbit_analysis(closure({MoebiusTransform()})), Error);
}

TEST_CASE("class formula and Burnside consistency") {
  std::mt19937_64 rng(12);
  for (const auto& t : kStandardTypes) {
    auto g = standard_group(t);
    for (int k = 0; k < 2; ++k) {
      const auto data = orbit_analysis(g);
      CHECK(data.group_order == g.order());
      CHECK(data.orbits.size() == (t.is_cyclic() ? 2u : 3u));
      double lhs = 0.0;
      for (const auto& o : data.orbits) {
        CHECK(static_cast<int>(o.points.size()) * o.stabilizer_order == g.order());
        lhs += 1.0 / o.stabilizer_order;
        // Every orbit point is fixed by exactly stabilizer_order elements.
        for (const auto& p : o.points) {
          int fixers = 0;
          for (const auto& e : g.elements()) fixers += moebius::chordal_distance(e(p), p) < 1e-8 ? 1 : 0;
          CHECK(fixers == o.stabilizer_order);
        }
      }
      const double k_orbits = static_cast<double>(data.orbits.size());
      CHECK(std::abs(lhs - (k_orbits - 2.0 + 2.0 / g.order())) < 1e-12);
      g = g.conjugated_by(moebius::random_transform(rng));
    }
  }
}

TEST_CASE("group JSON round trip") {
  const auto g = standard_group(GroupType::a4());
  const auto back = group_from_json(to_json(g));
  CHECK(back.order() == 12);
  CHECK(back.type() == GroupType::a4());

  const auto gens = generators_from_json(R"({"generators":[[[0,1],[0,0],[0,0],[0,-1]]]})");
  REQUIRE(gens.size() == 1);
  CHECK(closure(gens).type() == GroupType::cyclic(2));
  CHECK_THROWS_AS(generators_from_json("{\"generators\": 3}"), Error);
}
