#include "dessinmetric/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "dessinmetric/error.hpp"
#include "parallel.hpp"

namespace dessinmetric::metrics {

namespace {

using Transforms = std::vector<MoebiusTransform>;

/// m ∘ (u ↦ 1/u): evaluates m*g in the chart at ∞.
MoebiusTransform with_reciprocal(const MoebiusTransform& m) {
  return moebius::compose(m, moebius::reciprocal());
}

std::shared_ptr<const Transforms> share(Transforms t) {
  return std::make_shared<const Transforms>(std::move(t));
}

Transforms with_reciprocal_all(const Transforms& ms) {
  Transforms out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(with_reciprocal(m));
  return out;
}

/// Metric averaging round pullbacks over a fixed list of transformations.
ConformalMetric round_average(const Transforms& transforms, std::string provenance) {
  auto finite = share(transforms);
  auto infinite = share(with_reciprocal_all(transforms));
  auto average = [](const std::shared_ptr<const Transforms>& ms) {
    return [ms](Complex z) {
      double sum = 0.0;
      for (const auto& m : *ms) sum += round_pulled_factor(m, z);
      return sum / static_cast<double>(ms->size());
    };
  };
  return {average(finite), average(infinite), std::move(provenance)};
}

bool usable(double rho) { return std::isfinite(rho) && rho > 0.0; }

double log_rho_checked(const ConformalMetric& g, Chart chart, Complex w) {
  const double rho = g.at({chart, w});
  if (!usable(rho)) {
    throw Error(Errc::StencilOutOfDomain, "conformal factor is not positive and finite on the stencil");
  }
  return std::log(rho);
}

}  // namespace

ChartPoint preferred_chart(const moebius::SpherePoint& p) {
  if (p.is_infinite()) return {Chart::Infinity, Complex(0.0)};
  const Complex z = p.value();
  if (std::abs(z) <= 1.0) return {Chart::Finite, z};
  return {Chart::Infinity, 1.0 / z};
}

moebius::SpherePoint to_sphere(const ChartPoint& p) {
  if (p.chart == Chart::Finite) return p.coord;
  if (p.coord == Complex(0.0)) return moebius::SpherePoint::infinity();
  return 1.0 / p.coord;
}

ConformalMetric::ConformalMetric(Factor finite, Factor at_infinity, std::string provenance)
    : finite_(std::move(finite)), at_infinity_(std::move(at_infinity)), provenance_(std::move(provenance)) {}

ConformalMetric ConformalMetric::scaled(double c) const {
  return {[f = finite_, c](Complex z) { return c * f(z); },
          [f = at_infinity_, c](Complex u) { return c * f(u); }, provenance_ + " scaled"};
}

ConformalMetric round_metric() {
  auto factor = [](Complex z) {
    const double q = 1.0 + std::norm(z);
    return 4.0 / (q * q);
  };
  return {factor, factor, "round"};
}

ConformalMetric flat_metric() {
  return {[](Complex) { return 1.0; },
          [](Complex u) {
            const double r2 = std::norm(u);
            return 1.0 / (r2 * r2);
          },
          "flat"};
}

double pulled_factor(const ConformalMetric& g, const MoebiusTransform& m, Complex z) {
  const Complex num = m.a() * z + m.b();
  const Complex den = m.c() * z + m.d();
  if (std::abs(num) <= std::abs(den)) {
    const double d2 = std::norm(den);
    return g.rho(num / den) / (d2 * d2);
  }
  // m(z) lies outside the unit disc: read g in the chart u = 1/w. The map
  // z ↦ 1/m(z) has derivative of modulus 1/|az+b|².
  const double n2 = std::norm(num);
  return g.rho_at_infinity(den / num) / (n2 * n2);
}

double round_pulled_factor(const MoebiusTransform& m, Complex z) {
  const double s = std::norm(m.a() * z + m.b()) + std::norm(m.c() * z + m.d());
  return 4.0 / (s * s);
}

ConformalMetric pullback(const MoebiusTransform& m, const ConformalMetric& g) {
  const MoebiusTransform at_inf = with_reciprocal(m);
  return {[g, m](Complex z) { return pulled_factor(g, m, z); },
          [g, at_inf](Complex u) { return pulled_factor(g, at_inf, u); }, "pullback of " + g.provenance()};
}

ConformalMetric averaged_metric(const FiniteMoebiusGroup& g) {
  return round_average(g.elements(), "average over " + g.type().tag());
}

ConformalMetric conjugated_metric(const FiniteMoebiusGroup& g) {
  if (g.type().is_cyclic()) {
    throw Error(Errc::CyclicGroupUnsupported,
                "the conjugated metric is only canonical for non-cyclic groups (got " + g.type().tag() + ")");
  }
  const auto phi = groups::unitarize(g).phi;
  return round_average({phi}, "conjugated by unitarizer of " + g.type().tag());
}

ConformalMetric hermitian_restricted_metric(const std::array<Complex, 4>& form) {
  // Hermitian form applied to tangent vectors of S² ⊂ C × R ⊂ C²; its real
  // part is a Riemannian metric with first fundamental form E, F, G.
  const auto re_form = [form](const std::array<Complex, 2>& v, const std::array<Complex, 2>& w) {
    const Complex hw0 = form[0] * w[0] + form[1] * w[1];
    const Complex hw1 = form[2] * w[0] + form[3] * w[1];
    return (std::conj(v[0]) * hw0 + std::conj(v[1]) * hw1).real();
  };
  const auto area_density = [re_form](const std::array<Complex, 2>& dx, const std::array<Complex, 2>& dy) {
    const double e = re_form(dx, dx);
    const double f = re_form(dx, dy);
    const double g = re_form(dy, dy);
    return std::sqrt(std::max(0.0, e * g - f * f));
  };
  // Inverse stereographic parametrisation z ↦ (2z/q, (|z|² − 1)/q), q = 1 + |z|².
  auto finite = [area_density](Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double q = 1.0 + std::norm(z);
    const double q2 = q * q;
    const std::array<Complex, 2> dx{2.0 / q - 4.0 * x * z / q2, Complex(4.0 * x / q2)};
    const std::array<Complex, 2> dy{Complex(0.0, 2.0) / q - 4.0 * y * z / q2, Complex(4.0 * y / q2)};
    return area_density(dx, dy);
  };
  // Same surface in the chart u = 1/z: u ↦ (2ū/q, (1 − |u|²)/q).
  auto at_infinity = [area_density](Complex u) {
    const double x = u.real();
    const double y = u.imag();
    const double q = 1.0 + std::norm(u);
    const double q2 = q * q;
    const Complex ub = std::conj(u);
    const std::array<Complex, 2> dx{2.0 / q - 4.0 * x * ub / q2, Complex(-4.0 * x / q2)};
    const std::array<Complex, 2> dy{Complex(0.0, -2.0) / q - 4.0 * y * ub / q2, Complex(-4.0 * y / q2)};
    return area_density(dx, dy);
  };
  return {finite, at_infinity, "hermitian restriction"};
}

ConformalMetric hermitian_metric(const FiniteMoebiusGroup& g) {
  const ConformalMetric base = hermitian_restricted_metric(groups::averaged_hermitian_form(g));
  auto finite = share(g.elements());
  auto infinite = share(with_reciprocal_all(g.elements()));
  auto average = [base](const std::shared_ptr<const Transforms>& ms) {
    return [base, ms](Complex z) {
      double sum = 0.0;
      for (const auto& m : *ms) sum += pulled_factor(base, m, z);
      return sum / static_cast<double>(ms->size());
    };
  };
  return {average(finite), average(infinite), "hermitian form of " + g.type().tag()};
}

ConformalMetric orbit_triple_metric(const FiniteMoebiusGroup& g, OrbitTripleSummary* summary) {
  if (g.type().is_cyclic()) {
    if (summary != nullptr) *summary = OrbitTripleSummary{{}, 0, 0, true};
    auto round = round_metric();
    return {[round](Complex z) { return round.rho(z); }, [round](Complex u) { return round.rho_at_infinity(u); },
            "orbit triples (cyclic: round)"};
  }
  auto data = groups::orbit_analysis(g);
  std::sort(data.orbits.begin(), data.orbits.end(), [](const groups::Orbit& lhs, const groups::Orbit& rhs) {
    return lhs.points.size() < rhs.points.size();
  });
  if (data.orbits.size() != 3) {
    throw Error(Errc::NumericalAmbiguity, "expected three fixed-point orbits for a non-cyclic group");
  }
  std::array<std::size_t, 3> sizes{};
  for (std::size_t i = 0; i < 3; ++i) sizes[i] = data.orbits[i].points.size();

  // Role assignments: permutations of the orbits that only exchange orbits
  // of equal size.
  std::array<int, 3> perm{0, 1, 2};
  std::vector<std::array<int, 3>> assignments;
  do {
    bool keeps_sizes = true;
    for (std::size_t k = 0; k < 3; ++k) keeps_sizes = keeps_sizes && sizes[static_cast<std::size_t>(perm[k])] == sizes[k];
    if (keeps_sizes) assignments.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  Transforms transforms;
  transforms.reserve(assignments.size() * sizes[0] * sizes[1] * sizes[2]);
  for (const auto& roles : assignments) {
    const auto& zero_orbit = data.orbits[static_cast<std::size_t>(roles[0])].points;
    const auto& one_orbit = data.orbits[static_cast<std::size_t>(roles[1])].points;
    const auto& inf_orbit = data.orbits[static_cast<std::size_t>(roles[2])].points;
    for (const auto& a1 : zero_orbit) {
      for (const auto& a2 : one_orbit) {
        for (const auto& a3 : inf_orbit) transforms.push_back(moebius::from_triple(a1, a2, a3));
      }
    }
  }
  if (summary != nullptr) {
    summary->orbit_sizes = {static_cast<int>(sizes[0]), static_cast<int>(sizes[1]), static_cast<int>(sizes[2])};
    summary->role_assignments = static_cast<int>(assignments.size());
    summary->triples_per_assignment = static_cast<int>(sizes[0] * sizes[1] * sizes[2]);
    summary->cyclic_fallback = false;
  }
  return round_average(transforms, "orbit triples of " + g.type().tag());
}

double curvature_at(const ConformalMetric& g, const ChartPoint& p, double h) {
  if (!(h > 0.0)) throw Error(Errc::StencilOutOfDomain, "curvature step must be positive");
  const Complex w = p.coord;
  const double center = log_rho_checked(g, p.chart, w);
  const double laplacian = (log_rho_checked(g, p.chart, w + h) + log_rho_checked(g, p.chart, w - h) +
                            log_rho_checked(g, p.chart, w + Complex(0.0, h)) +
                            log_rho_checked(g, p.chart, w - Complex(0.0, h)) - 4.0 * center) /
                           (h * h);
  return -0.5 * laplacian / std::exp(center);
}

double curvature(const ConformalMetric& g, Complex z, double h) {
  return curvature_at(g, preferred_chart(z), h);
}

double curvature_richardson(const ConformalMetric& g, const ChartPoint& p, double h) {
  return (4.0 * curvature_at(g, p, 0.5 * h) - curvature_at(g, p, h)) / 3.0;
}

std::vector<ChartPoint> sample_grid(int n) {
  std::vector<ChartPoint> finite;
  const double cell = 2.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex z(-1.0 + (i + 0.5) * cell, -1.0 + (j + 0.5) * cell);
      if (std::abs(z) < 1.0) finite.push_back({Chart::Finite, z});
    }
  }
  std::vector<ChartPoint> out = finite;
  for (const auto& p : finite) out.push_back({Chart::Infinity, p.coord});
  return out;
}

std::vector<ChartPoint> pole_avoiding_grid(const ConformalMetric& g, int n, double pole_radius) {
  std::vector<ChartPoint> out;
  for (const auto& p : sample_grid(n)) {
    bool ok = usable(g.at(p));
    for (int k = 0; k < 4 && ok; ++k) {
      const Complex offset = std::polar(pole_radius, 0.5 * std::numbers::pi * k);
      ok = usable(g.at({p.chart, p.coord + offset}));
    }
    if (ok) out.push_back(p);
  }
  return out;
}

std::vector<ChartPoint> sphere_samples(int count) {
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double t = 1.0 - (2.0 * i + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    const moebius::EuclideanSpherePoint p{std::polar(r, golden_angle * i), t};
    out.push_back(preferred_chart(moebius::stereographic(p)));
  }
  return out;
}

double CurvatureReport::min() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) out = std::min(out, s.value);
  return out;
}

double CurvatureReport::max() const {
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) out = std::max(out, s.value);
  return out;
}

double CurvatureReport::max_deviation_from(double c) const {
  double out = 0.0;
  for (const auto& s : samples) out = std::max(out, std::abs(s.value - c));
  return out;
}

std::string scheme_name(CurvatureScheme s) { return s == CurvatureScheme::Central ? "central" : "richardson"; }

CurvatureReport curvature_report(const ConformalMetric& g, const std::vector<ChartPoint>& grid, double h,
                                 int workers, CurvatureScheme scheme) {
  CurvatureReport report;
  report.samples.resize(grid.size());
  detail::parallel_for(grid.size(), workers, [&](std::size_t i) {
    const double k = scheme == CurvatureScheme::Central ? curvature_at(g, grid[i], h)
                                                        : curvature_richardson(g, grid[i], h);
    report.samples[i] = {grid[i], k};
  });
  return report;
}

double invariance_defect(const ConformalMetric& g, const FiniteMoebiusGroup& group, int samples, int workers) {
  const auto points = sphere_samples(samples);
  const Transforms at_inf = with_reciprocal_all(group.elements());
  std::vector<double> worst(points.size(), 0.0);
  detail::parallel_for(points.size(), workers, [&](std::size_t i) {
    const auto& p = points[i];
    const double reference = g.at(p);
    double local = 0.0;
    for (std::size_t k = 0; k < group.elements().size(); ++k) {
      const double pulled = p.chart == Chart::Finite ? pulled_factor(g, group.elements()[k], p.coord)
                                                     : pulled_factor(g, at_inf[k], p.coord);
      local = std::max(local, std::abs(pulled - reference) / reference);
    }
    worst[i] = local;
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double metric_distance_on(const ConformalMetric& g1, const ConformalMetric& g2,
                          const std::vector<ChartPoint>& points) {
  double out = 0.0;
  for (const auto& p : points) {
    const double r2 = g2.at(p);
    out = std::max(out, std::abs(g1.at(p) - r2) / r2);
  }
  return out;
}

double metric_distance(const ConformalMetric& g1, const ConformalMetric& g2, int samples) {
  return metric_distance_on(g1, g2, sphere_samples(samples));
}

double conjugator_well_defined(const FiniteMoebiusGroup& g, int trials, std::uint64_t seed) {
  if (g.type().is_cyclic()) {
    throw Error(Errc::CyclicGroupUnsupported,
                "cyclic groups have a non-compact normalizer, so the conjugator is not unique up to SO(3)");
  }
  std::mt19937_64 rng(seed);
  std::vector<ConformalMetric> candidates{conjugated_metric(g)};
  for (int t = 0; t < trials; ++t) {
    const MoebiusTransform m = moebius::random_transform(rng);
    const auto phi = groups::unitarize(g.conjugated_by(m)).phi;
    candidates.push_back(round_average({moebius::compose(phi, m)}, "conjugated (trial)"));
  }
  const auto grid = sample_grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      worst = std::max(worst, metric_distance_on(candidates[i], candidates[j], grid));
    }
  }
  return worst;
}

}  // namespace dessinmetric::metrics
