#include "dessinmetric/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "dessinmetric/dessin.hpp"
#include "dessinmetric/error.hpp"
#include "dessinmetric/finite_groups.hpp"
#include "dessinmetric/metrics.hpp"
#include "dessinmetric/schwarz_christoffel.hpp"

namespace dessinmetric::verify {

namespace {

using groups::FiniteMoebiusGroup;
using moebius::Complex;
using moebius::MoebiusTransform;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(std::string scope) : scope_(std::move(scope)) {}

  void check(const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckResult r{scope_, name, false, {}};
    try {
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string scope_;
  std::vector<CheckResult> results_;
};

std::vector<GroupType> non_cyclic_types() {
  return {GroupType::dihedral(2), GroupType::dihedral(3), GroupType::dihedral(4), GroupType::dihedral(6),
          GroupType::a4(),        GroupType::s4(),        GroupType::a5()};
}

FiniteMoebiusGroup build_group(const GroupType& type, bool perturb) {
  auto gens = moebius::standard_generators(type);
  if (perturb && gens.size() > 1) {
    const auto& g = gens[1];
    gens[1] = MoebiusTransform(g.a() * 1.001, g.b(), g.c(), g.d());
  }
  return groups::closure(gens);
}

std::vector<CheckResult> group_checks(bool perturb) {
  Recorder rec("groups");
  const std::vector<GroupType> all_types = {GroupType::cyclic(2), GroupType::cyclic(3), GroupType::cyclic(5),
                                            GroupType::cyclic(6), GroupType::dihedral(2), GroupType::dihedral(3),
                                            GroupType::dihedral(6), GroupType::a4(), GroupType::s4(),
                                            GroupType::a5()};
  rec.check("closure orders of standard generators", [&](bool& ok) {
    ok = true;
    std::string detail;
    for (const auto& t : all_types) {
      const auto g = build_group(t, perturb);
      ok = ok && g.order() == t.order() && g.type() == t;
      detail += t.tag() + "=" + std::to_string(g.order()) + " ";
    }
    return detail;
  });
  rec.check("orbit signatures and class formula", [&](bool& ok) {
    ok = true;
    std::string detail;
    for (const auto& t : non_cyclic_types()) {
      const auto g = build_group(t, perturb);
      const auto data = groups::orbit_analysis(g);
      std::vector<int> sizes;
      double burnside = 0.0;
      for (const auto& o : data.orbits) {
        sizes.push_back(static_cast<int>(o.points.size()));
        ok = ok && static_cast<int>(o.points.size()) * o.stabilizer_order == g.order();
        burnside += 1.0 / o.stabilizer_order;
      }
      std::vector<int> expected;
      switch (t.kind) {
        case GroupType::Kind::Dihedral: expected = {t.n, t.n, 2}; break;
        case GroupType::Kind::A4: expected = {6, 4, 4}; break;
        case GroupType::Kind::S4: expected = {12, 8, 6}; break;
        case GroupType::Kind::A5: expected = {30, 20, 12}; break;
        default: break;
      }
      std::sort(expected.rbegin(), expected.rend());
      ok = ok && sizes == expected;
      const double k = static_cast<double>(data.orbits.size());
      ok = ok && std::abs(burnside - (k - 2.0 + 2.0 / g.order())) < 1e-12;
      detail += t.tag() + " ";
    }
    return detail;
  });
  rec.check("unitarization of random conjugates", [&](bool& ok) {
    ok = true;
    double worst = 0.0;
    std::mt19937_64 rng(7);
    for (const auto& t : {GroupType::dihedral(4), GroupType::a4(), GroupType::s4(), GroupType::a5()}) {
      const auto g = build_group(t, perturb);
      for (int trial = 0; trial < 3; ++trial) {
        const auto conj = g.conjugated_by(moebius::random_transform(rng));
        const auto phi = groups::unitarize(conj).phi;
        const auto unitary = conj.conjugated_by(phi);
        worst = std::max(worst, groups::max_unitarity_defect(unitary));
      }
    }
    ok = worst < 1e-8;
    return "max defect " + fmt(worst);
  });
  rec.check("dessin topology of reference dessins", [&](bool& ok) {
    const auto equator = dessin::parse_dessin(R"({"darts":2,"sigma_white":[[1,2]],"sigma_black":[[1,2]]})");
    const auto edge = dessin::parse_dessin(R"({"darts":1,"sigma_white":[],"sigma_black":[]})");
    const auto torus = dessin::parse_dessin(R"({"darts":4,"sigma_white":[[1,2,3,4]],"sigma_black":[[1,2,3,4]]})");
    ok = dessin::genus(equator) == 0 && dessin::genus(edge) == 0 && dessin::genus(torus) == 1 &&
         dessin::passport(torus).face_half_degrees == std::vector<int>{2, 2} &&
         dessin::triangulate(torus).triangle_count == 8 && dessin::automorphisms(equator).order() == 2;
    return "equator, single edge, torus";
  });
  rec.check("Riemann-Hurwitz on random dessins", [&](bool& ok) {
    ok = true;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      const auto d = dessin::random_dessin(rng, 1 + i % 10);
      const auto p = dessin::passport(d);
      int ramification = 0;
      for (const auto* v : {&p.white_degrees, &p.black_degrees, &p.face_half_degrees}) {
        for (int e : *v) ramification += e - 1;
      }
      ok = ok && 2 - 2 * dessin::genus(d) == 2 * p.degree - ramification &&
           d.dart_count() % dessin::automorphisms(d).order() == 0;
    }
    return "20 random dessins";
  });
  return rec.take();
}

std::vector<CheckResult> metric_checks() {
  Recorder rec("metrics");
  std::mt19937_64 rng(13);
  rec.check("conjugated metric has curvature 1", [&](bool& ok) {
    double worst = 0.0;
    for (const auto& t : non_cyclic_types()) {
      const auto base = groups::standard_group(t);
      std::vector<FiniteMoebiusGroup> cases{base};
      for (int trial = 0; trial < 3; ++trial) cases.push_back(base.conjugated_by(moebius::random_transform(rng)));
      for (const auto& g : cases) {
        const auto metric = metrics::conjugated_metric(g);
        const auto report = metrics::curvature_report(metric, metrics::pole_avoiding_grid(metric));
        worst = std::max(worst, report.max_deviation_from(1.0));
      }
    }
    ok = worst < 1e-4;
    return "max |K-1| " + fmt(worst);
  });
  rec.check("invariance of constructions 1-3", [&](bool& ok) {
    ok = true;
    double conj_worst = 0.0;
    double other_worst = 0.0;
    for (const auto& t : {GroupType::dihedral(3), GroupType::a4(), GroupType::s4(), GroupType::a5()}) {
      const auto g = groups::standard_group(t).conjugated_by(moebius::random_transform(rng));
      conj_worst = std::max(conj_worst, metrics::invariance_defect(metrics::conjugated_metric(g), g));
      other_worst = std::max(other_worst, metrics::invariance_defect(metrics::averaged_metric(g), g));
      other_worst = std::max(other_worst, metrics::invariance_defect(metrics::hermitian_metric(g), g));
    }
    ok = conj_worst < 1e-8 && other_worst < 1e-9;
    return "conjugated " + fmt(conj_worst) + ", average/hermitian " + fmt(other_worst);
  });
  rec.check("conjugator independence", [&](bool& ok) {
    double worst = 0.0;
    for (const auto& t : {GroupType::a4(), GroupType::s4(), GroupType::dihedral(3)}) {
      worst = std::max(worst, metrics::conjugator_well_defined(groups::standard_group(t), 3, 17));
    }
    bool cyclic_rejected = false;
    try {
      metrics::conjugator_well_defined(groups::standard_group(GroupType::cyclic(5)), 3, 17);
    } catch (const Error& e) {
      cyclic_rejected = e.code() == Errc::CyclicGroupUnsupported;
    }
    ok = worst < 1e-6 && cyclic_rejected;
    return "max distance " + fmt(worst) + (cyclic_rejected ? ", C5 rejected" : ", C5 not rejected");
  });
  rec.check("SO(3) groups give the round metric", [&](bool& ok) {
    double worst = 0.0;
    const auto round = metrics::round_metric();
    for (const auto& t : non_cyclic_types()) {
      const auto g = groups::standard_group(t);
      if (!groups::is_in_SO3(g)) throw Error(Errc::NumericalAmbiguity, t.tag() + " is not unitary");
      worst = std::max(worst, metrics::metric_distance(metrics::averaged_metric(g), round));
      worst = std::max(worst, metrics::metric_distance(metrics::conjugated_metric(g), round));
      worst = std::max(worst, metrics::metric_distance(metrics::hermitian_metric(g), round));
    }
    ok = worst < 1e-9;
    return "max distance " + fmt(worst);
  });
  return rec.take();
}

std::vector<CheckResult> sc_checks() {
  Recorder rec("sc");
  using std::numbers::pi;
  rec.check("vertex angles", [&](bool& ok) {
    const auto angles = sc::interior_angles(sc::triangle_map());
    const double err = std::max({std::abs(angles[0] - pi / 2), std::abs(angles[1] - pi / 3),
                                 std::abs(angles[2] - pi / 6)});
    ok = err < 1e-6;
    return "max angle error " + fmt(err);
  });
  rec.check("round trips", [&](bool& ok) {
    double worst = 0.0;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const Complex z(4.0 * unit(rng) - 2.0, 0.05 + 2.0 * unit(rng));
      worst = std::max(worst, std::abs(sc::sc_inverse(sc::sc_forward(z)) - z));
      const double s = unit(rng);
      const double t = unit(rng) * (1.0 - s);
      const auto& v = sc::triangle_map().vertices;
      const Complex w = v[0] + 0.98 * (s * (v[1] - v[0]) + t * (v[2] - v[0])) + 0.01 * (v[1] + v[2] - 2.0 * v[0]) / 3.0;
      worst = std::max(worst, std::abs(sc::sc_forward(sc::sc_inverse(w)) - w));
    }
    ok = worst < 1e-9;
    return "max error " + fmt(worst);
  });
  rec.check("butterfly gluing", [&](bool& ok) {
    const auto& b = sc::butterfly();
    const bool vertices = sc::butterfly_belyi(b.white_positive).value() == Complex(0.0) &&
                          sc::butterfly_belyi(b.white_negative).value() == Complex(0.0) &&
                          sc::butterfly_belyi(b.black).value() == Complex(1.0) &&
                          sc::butterfly_belyi(b.center).is_infinite();
    const Complex edge = b.black - b.center;
    const Complex normal = Complex(0.0, 1.0) * edge / std::abs(edge);
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const Complex e = b.center + edge * (static_cast<double>(i) / 21.0);
      worst = std::max(worst, moebius::chordal_distance(sc::butterfly_belyi(e + 1e-4 * normal),
                                                        sc::butterfly_belyi(e - 1e-4 * normal)));
    }
    ok = vertices && worst < 1e-3;
    return "max chordal jump " + fmt(worst);
  });
  return rec.take();
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& scope, bool perturb) {
  std::vector<CheckResult> out;
  const auto append = [&](std::vector<CheckResult> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  if (scope == "groups" || scope == "all") append(group_checks(perturb));
  if (scope == "metrics" || scope == "all") append(metric_checks());
  if (scope == "sc" || scope == "all") append(sc_checks());
  return out;
}

}  // namespace dessinmetric::verify
