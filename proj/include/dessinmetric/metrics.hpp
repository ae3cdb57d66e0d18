#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dessinmetric/finite_groups.hpp"
#include "dessinmetric/moebius.hpp"

namespace dessinmetric::metrics {

using moebius::Complex;
using moebius::MoebiusTransform;
using groups::FiniteMoebiusGroup;

inline constexpr double kDefaultCurvatureStep = 1e-3;
inline constexpr int kDefaultGridSize = 40;

/// The two holomorphic charts of the sphere: z, and u = 1/z around ∞.
enum class Chart : std::uint8_t { Finite, Infinity };

struct ChartPoint {
  Chart chart = Chart::Finite;
  Complex coord;
};

/// Chart with |coordinate| <= 1 for the given point.
ChartPoint preferred_chart(const moebius::SpherePoint& p);
moebius::SpherePoint to_sphere(const ChartPoint& p);

/// ρ(z)|dz|² on the finite chart together with ρ∞(u)|du|² on the chart at
/// ∞; the two agree through ρ(z) = ρ∞(1/z)·|z|⁻⁴.
class ConformalMetric {
 public:
  using Factor = std::function<double(Complex)>;

  ConformalMetric(Factor finite, Factor at_infinity, std::string provenance);

  double rho(Complex z) const { return finite_(z); }
  double rho_at_infinity(Complex u) const { return at_infinity_(u); }
  double at(const ChartPoint& p) const {
    return p.chart == Chart::Finite ? finite_(p.coord) : at_infinity_(p.coord);
  }
  const std::string& provenance() const { return provenance_; }

  /// c·ρ in both charts.
  ConformalMetric scaled(double c) const;

 private:
  Factor finite_;
  Factor at_infinity_;
  std::string provenance_;
};

/// 4|dz|²/(1+|z|²)²
ConformalMetric round_metric();
/// |dz|² on the finite chart (singular at ∞).
ConformalMetric flat_metric();

/// Conformal factor of m*g at z in the finite chart. Chooses the chart of g
/// containing m(z) with modulus at most one, so it is defined everywhere.
double pulled_factor(const ConformalMetric& g, const MoebiusTransform& m, Complex z);
/// Closed form of pulled_factor(round_metric(), m, z):
/// 4/(|az+b|² + |cz+d|²)².
double round_pulled_factor(const MoebiusTransform& m, Complex z);

ConformalMetric pullback(const MoebiusTransform& m, const ConformalMetric& g);

/// Group average of the pullbacks of the round metric.
ConformalMetric averaged_metric(const FiniteMoebiusGroup& g);

/// φ*g_round with φ from groups::unitarize. Throws
/// Error{CyclicGroupUnsupported} for cyclic groups.
ConformalMetric conjugated_metric(const FiniteMoebiusGroup& g);

/// Real part of a Hermitian form on C² restricted to the unit sphere
/// S² ⊂ C × R ⊂ C², reduced to its conformal factor (the area density
/// √(EG − F²) in each chart). The identity form gives the round metric.
ConformalMetric hermitian_restricted_metric(const std::array<Complex, 4>& form);

/// hermitian_restricted_metric of the averaged form (1/|G|)ΣAᴴA,
/// symmetrized over G so that the result is G-invariant.
ConformalMetric hermitian_metric(const FiniteMoebiusGroup& g);

struct OrbitTripleSummary {
  std::vector<int> orbit_sizes;  // ascending; the roles 0, 1, ∞ in this order
  int role_assignments = 0;
  int triples_per_assignment = 0;
  bool cyclic_fallback = false;
};

/// Average of h*g_round over the transformations h sending (0, 1, ∞) to a
/// point of each fixed-point orbit, orbits ordered by size. Orbits of equal
/// size are averaged over every exchange of their roles. Cyclic groups give
/// the round metric.
ConformalMetric orbit_triple_metric(const FiniteMoebiusGroup& g, OrbitTripleSummary* summary = nullptr);

/// Gaussian curvature −Δ(log ρ)/(2ρ) from the 5-point Laplacian with step h,
/// evaluated in the chart where the point has modulus at most one.
/// Throws Error{StencilOutOfDomain} if ρ is not positive and finite on the
/// stencil.
double curvature(const ConformalMetric& g, Complex z, double h = kDefaultCurvatureStep);
double curvature_at(const ConformalMetric& g, const ChartPoint& p, double h = kDefaultCurvatureStep);
/// (4K(h/2) − K(h))/3
double curvature_richardson(const ConformalMetric& g, const ChartPoint& p, double h = kDefaultCurvatureStep);

/// Central is the plain 5-point estimate at step h; Richardson combines the
/// estimates at h and h/2.
enum class CurvatureScheme : std::uint8_t { Central, Richardson };
std::string scheme_name(CurvatureScheme s);

/// n×n cell-centred grid on the unit disc in the finite chart plus the same
/// coordinates in the chart at ∞ (the image under z ↦ 1/z).
std::vector<ChartPoint> sample_grid(int n = kDefaultGridSize);
/// sample_grid with points closer than `pole_radius` to a pole of ρ removed
/// (ρ checked at the point and at four points on the circle of that radius).
std::vector<ChartPoint> pole_avoiding_grid(const ConformalMetric& g, int n = kDefaultGridSize,
                                           double pole_radius = 1e-2);
/// Fibonacci-lattice points on the sphere in their preferred charts.
std::vector<ChartPoint> sphere_samples(int count);

struct CurvatureSample {
  ChartPoint point;
  double value = 0.0;
};

struct CurvatureReport {
  std::vector<CurvatureSample> samples;

  double min() const;
  double max() const;
  double spread() const { return max() - min(); }
  double max_deviation_from(double c) const;
};

/// Evaluates curvature on every grid point. The result is identical for any
/// worker count.
CurvatureReport curvature_report(const ConformalMetric& g, const std::vector<ChartPoint>& grid,
                                 double h = kDefaultCurvatureStep, int workers = 1,
                                 CurvatureScheme scheme = CurvatureScheme::Richardson);

/// sup over samples and h in the group of |ρ_{h*g} − ρ_g|/ρ_g.
double invariance_defect(const ConformalMetric& g, const FiniteMoebiusGroup& group, int samples = 200,
                         int workers = 1);

/// sup over samples of |ρ₁ − ρ₂|/ρ₂, chart by chart.
double metric_distance(const ConformalMetric& g1, const ConformalMetric& g2, int samples = 200);
double metric_distance_on(const ConformalMetric& g1, const ConformalMetric& g2,
                          const std::vector<ChartPoint>& points);

/// Builds the conjugated metric of g through `trials` further conjugators
/// (each obtained by pre-conjugating g with a random transformation and
/// unitarizing) and returns the largest pairwise distance between all of
/// them on sample_grid(). Throws Error{CyclicGroupUnsupported} for cyclic g.
double conjugator_well_defined(const FiniteMoebiusGroup& g, int trials, std::uint64_t seed = 0);

}  // namespace dessinmetric::metrics
