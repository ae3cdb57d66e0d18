// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dessinmetric/dessin.hpp"
#include "dessinmetric/error.hpp"
#include "dessinmetric/finite_groups.hpp"
#include "dessinmetric/metrics.hpp"
#include "dessinmetric/schwarz_christoffel.hpp"

using namespace dessinmetric;
using groups::FiniteMoebiusGroup;
using groups::standard_group;
using moebius::Complex;
using moebius::MoebiusTransform;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<GroupType> kNonCyclic{GroupType::dihedral(2), GroupType::dihedral(3), GroupType::dihedral(4),
                                        GroupType::dihedral(6), GroupType::a4(),        GroupType::s4(),
                                        GroupType::a5()};

std::vector<FiniteMoebiusGroup> with_random_conjugates(const GroupType& t, int count, std::mt19937_64& rng) {
  std::vector<FiniteMoebiusGroup> out{standard_group(t)};
  for (int i = 0; i < count; ++i) out.push_back(out.front().conjugated_by(moebius::random_transform(rng)));
  return out;
}

Outcome group_orders() {
  const std::vector<std::pair<GroupType, int>> cases{
      {GroupType::cyclic(2), 2},    {GroupType::cyclic(3), 3},    {GroupType::cyclic(5), 5},
      {GroupType::cyclic(6), 6},    {GroupType::dihedral(2), 4},  {GroupType::dihedral(3), 6},
      {GroupType::dihedral(6), 12}, {GroupType::a4(), 12},        {GroupType::s4(), 24},
      {GroupType::a5(), 60}};
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  for (const auto& [t, n] : cases) {
    const int got = standard_group(t).order();
    if (got != n) {
      o.passed = false;
      o.detail += t.tag() + "=" + std::to_string(got) + " ";
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.passed = o.passed && secs < 10.0;
  o.detail += "10 groups in " + fmt(secs) + " s";
  return o;
}

Outcome orbit_signatures() {
  const std::vector<std::pair<GroupType, std::vector<std::size_t>>> cases{
      {GroupType::dihedral(2), {2, 2, 2}},  {GroupType::dihedral(3), {3, 3, 2}},
      {GroupType::dihedral(6), {6, 6, 2}},  {GroupType::a4(), {6, 4, 4}},
      {GroupType::s4(), {12, 8, 6}},        {GroupType::a5(), {30, 20, 12}}};
  Outcome o;
  for (const auto& [t, expected] : cases) {
    const auto g = standard_group(t);
    const auto data = groups::orbit_analysis(g);
    std::vector<std::size_t> sizes;
    bool class_formula = true;
    for (const auto& orbit : data.orbits) {
      sizes.push_back(orbit.points.size());
      class_formula = class_formula && static_cast<int>(orbit.points.size()) * orbit.stabilizer_order == g.order();
    }
    std::sort(sizes.rbegin(), sizes.rend());
    if (sizes != expected || !class_formula) {
      o.passed = false;
      o.detail += t.tag() + " mismatch; ";
    }
  }
  if (o.passed) o.detail = "D2 D3 D6 A4 S4 A5 signatures and class formula exact";
  return o;
}

Outcome unitarization() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (const auto& t : {GroupType::dihedral(4), GroupType::a4(), GroupType::s4(), GroupType::a5()}) {
    for (const auto& g : with_random_conjugates(t, 3, rng)) {
      const auto u = g.conjugated_by(groups::unitarize(g).phi);
      worst = std::max(worst, groups::max_unitarity_defect(u));
    }
  }
  return {worst < 1e-8, "max unitarity defect " + fmt(worst)};
}

Outcome canonical_curvature() {
  std::mt19937_64 rng(202);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_central = 0.0;
  std::size_t points = 0;
  for (const auto& t : kNonCyclic) {
    for (const auto& g : with_random_conjugates(t, 3, rng)) {
      const auto metric = metrics::conjugated_metric(g);
      const auto grid = metrics::pole_avoiding_grid(metric, 40);
      const auto report = metrics::curvature_report(metric, grid, 1e-3);
      const auto central = metrics::curvature_report(metric, grid, 1e-3, 1, metrics::CurvatureScheme::Central);
      worst = std::max(worst, report.max_deviation_from(1.0));
      worst_central = std::max(worst_central, central.max_deviation_from(1.0));
      points += report.samples.size();
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst < 1e-4 && secs < 60.0, "max |K-1| " + fmt(worst) + " (single-step stencil " + fmt(worst_central) +
                                           ") over " + std::to_string(points) + " points in " + fmt(secs) + " s"};
}

Outcome invariance() {
  std::mt19937_64 rng(303);
  double conj = 0.0, avg = 0.0, herm = 0.0;
  for (const auto& t : kNonCyclic) {
    for (const auto& g : with_random_conjugates(t, 1, rng)) {
      conj = std::max(conj, metrics::invariance_defect(metrics::conjugated_metric(g), g, 200));
      avg = std::max(avg, metrics::invariance_defect(metrics::averaged_metric(g), g, 200));
      herm = std::max(herm, metrics::invariance_defect(metrics::hermitian_metric(g), g, 200));
    }
  }
  // Cyclic groups for the two constructions that accept them.
  for (const auto& g : with_random_conjugates(GroupType::cyclic(5), 1, rng)) {
    avg = std::max(avg, metrics::invariance_defect(metrics::averaged_metric(g), g, 200));
    herm = std::max(herm, metrics::invariance_defect(metrics::hermitian_metric(g), g, 200));
  }
  return {conj < 1e-8 && avg < 1e-9 && herm < 1e-9,
          "conjugated " + fmt(conj) + ", averaged " + fmt(avg) + ", hermitian " + fmt(herm)};
}

Outcome well_definedness() {
  double worst = 0.0;
  for (const auto& t : {GroupType::a4(), GroupType::s4(), GroupType::dihedral(3)}) {
    worst = std::max(worst, metrics::conjugator_well_defined(standard_group(t), 3, 7));
  }
  bool rejected = false;
  try {
    metrics::conjugator_well_defined(standard_group(GroupType::cyclic(5)), 3, 7);
  } catch (const Error& e) {
    rejected = e.code() == Errc::CyclicGroupUnsupported;
  }
  return {worst < 1e-6 && rejected,
          "max distance " + fmt(worst) + (rejected ? ", C5 rejected" : ", C5 NOT rejected")};
}

Outcome so3_coincidence() {
  std::mt19937_64 rng(404);
  std::vector<FiniteMoebiusGroup> candidates;
  for (const auto& t : kNonCyclic) candidates.push_back(standard_group(t));
  candidates.push_back(standard_group(GroupType::cyclic(5)));
  // Unitarized random conjugates land back inside SO(3).
  for (const auto& t : {GroupType::a4(), GroupType::a5()}) {
    const auto g = standard_group(t).conjugated_by(moebius::random_transform(rng));
    candidates.push_back(g.conjugated_by(groups::unitarize(g).phi));
  }
  const auto round = metrics::round_metric();
  double worst = 0.0;
  int used = 0;
  for (const auto& g : candidates) {
    if (!groups::is_in_SO3(g)) continue;
    ++used;
    worst = std::max(worst, metrics::metric_distance(metrics::averaged_metric(g), round, 200));
    worst = std::max(worst, metrics::metric_distance(metrics::hermitian_metric(g), round, 200));
    if (!g.type().is_cyclic()) worst = std::max(worst, metrics::metric_distance(metrics::conjugated_metric(g), round, 200));
  }
  return {worst < 1e-9 && used == static_cast<int>(candidates.size()),
          std::to_string(used) + " groups, max distance " + fmt(worst)};
}

// Brute-force centralizer over all dart permutations.
std::size_t brute_aut_order(const dessin::Dessin& d) {
  std::vector<int> f(static_cast<std::size_t>(d.dart_count()));
  std::iota(f.begin(), f.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t x = 0; x < f.size() && ok; ++x) {
      ok = f[static_cast<std::size_t>(d.sigma_white()[x])] == d.sigma_white()[static_cast<std::size_t>(f[x])] &&
           f[static_cast<std::size_t>(d.sigma_black()[x])] == d.sigma_black()[static_cast<std::size_t>(f[x])];
    }
    count += ok ? 1 : 0;
  } while (std::next_permutation(f.begin(), f.end()));
  return count;
}

Outcome dessin_topology() {
  Outcome o;
  struct Ref {
    const char* name;
    const char* text;
    int genus;
    std::vector<int> white, black, faces;
  };
  const std::vector<Ref> refs{
      {"equator", R"({"darts":2,"sigma_white":[[1,2]],"sigma_black":[[1,2]]})", 0, {2}, {2}, {1, 1}},
      {"single edge", R"({"darts":1,"sigma_white":[],"sigma_black":[]})", 0, {1}, {1}, {1}},
      {"torus", R"({"darts":4,"sigma_white":[[1,2,3,4]],"sigma_black":[[1,2,3,4]]})", 1, {4}, {4}, {2, 2}}};
  for (const auto& r : refs) {
    const auto d = dessin::parse_dessin(r.text);
    const auto p = dessin::passport(d);
    const auto tri = dessin::triangulate(d);
    const bool ok = dessin::genus(d) == r.genus && p.white_degrees == r.white && p.black_degrees == r.black &&
                    p.face_half_degrees == r.faces && tri.triangle_count == 2 * d.dart_count() &&
                    tri.butterfly_count == d.dart_count();
    if (!ok) {
      o.passed = false;
      o.detail += std::string(r.name) + " mismatch; ";
    }
  }
  std::mt19937_64 rng(505);
  int rh_failures = 0, aut_failures = 0, brute_checked = 0;
  for (int i = 0; i < 20; ++i) {
    const auto d = dessin::random_dessin(rng, 1 + i % 10);
    const auto p = dessin::passport(d);
    int ramification = 0;
    for (const auto* v : {&p.white_degrees, &p.black_degrees, &p.face_half_degrees}) {
      for (int e : *v) ramification += e - 1;
    }
    if (2 - 2 * dessin::genus(d) != 2 * p.degree - ramification) ++rh_failures;
    const auto aut = dessin::automorphisms(d);
    if (d.dart_count() % aut.order() != 0) ++aut_failures;
    if (d.dart_count() <= 7) {
      ++brute_checked;
      if (brute_aut_order(d) != static_cast<std::size_t>(aut.order())) ++aut_failures;
    }
  }
  o.passed = o.passed && rh_failures == 0 && aut_failures == 0;
  o.detail += "reference dessins ok=" + std::string(o.passed ? "yes" : "no") + ", Riemann-Hurwitz failures " +
              std::to_string(rh_failures) + "/20, automorphism mismatches " + std::to_string(aut_failures) +
              " (" + std::to_string(brute_checked) + " brute-forced)";
  return o;
}

Outcome schwarz_christoffel() {
  using std::numbers::pi;
  const auto angles = sc::interior_angles(sc::triangle_map());
  const double angle_err = std::max({std::abs(angles[0] - pi / 2), std::abs(angles[1] - pi / 3),
                                     std::abs(angles[2] - pi / 6)});
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(0.05, 3.0), u(0.02, 0.48);
  double trip = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex z(x(rng), y(rng));
    trip = std::max(trip, std::abs(sc::sc_inverse(sc::sc_forward(z)) - z) / (1.0 + std::abs(z)));
    const Complex w = u(rng) * Complex(1.0) + u(rng) * Complex(0.0, -std::sqrt(3.0));
    trip = std::max(trip, std::abs(sc::sc_forward(sc::sc_inverse(w)) - w));
  }
  const auto& b = sc::butterfly();
  const Complex dir = b.center - b.black;
  const Complex normal = Complex(0.0, 1.0) * dir / std::abs(dir);
  double gap = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const Complex on_edge = b.black + dir * (k / 21.0);
    gap = std::max(gap, moebius::chordal_distance(sc::butterfly_belyi(on_edge + 1e-4 * normal),
                                                   sc::butterfly_belyi(on_edge - 1e-4 * normal)));
  }
  const auto w0 = sc::butterfly_belyi(b.white_positive);
  const auto w1 = sc::butterfly_belyi(b.white_negative);
  const auto bl = sc::butterfly_belyi(b.black);
  const auto ce = sc::butterfly_belyi(b.center);
  const bool exact = !w0.is_infinite() && w0.value() == Complex(0.0) && !w1.is_infinite() &&
                     w1.value() == Complex(0.0) && !bl.is_infinite() && bl.value() == Complex(1.0) &&
                     ce.is_infinite();
  return {angle_err < 1e-6 && trip < 1e-9 && gap < 1e-3 && exact,
          "angle error " + fmt(angle_err) + ", round trip " + fmt(trip) + ", gluing gap " + fmt(gap) +
              (exact ? ", vertices exact" : ", vertices NOT exact")};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "dessinmetric_acceptance";
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const auto grid = dir / ("grid_" + std::to_string(run) + ".csv");
    const auto report = dir / ("report_" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + DESSINMETRIC_CLI + "\" metric --group A4 --construction conjugate" +
                            " --grid 40 --seed 1234 --workers " + (run == 0 ? "1" : "4") + " --out \"" +
                            grid.string() + "\" --report \"" + report.string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cmd};
    outputs.push_back(read_file(grid));
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, std::to_string(outputs[0].size()) + " bytes, " + (same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"group orders", group_orders},
      {"orbit signatures", orbit_signatures},
      {"unitarization", unitarization},
      {"canonical metric curvature", canonical_curvature},
      {"invariance", invariance},
      {"well-definedness", well_definedness},
      {"SO(3) coincidence", so3_coincidence},
      {"dessin topology", dessin_topology},
      {"Schwarz-Christoffel", schwarz_christoffel},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.passed ? 0 : 1;
    std::printf("%s  %2d. %-28s %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
