#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hessmin/energy.hpp"
#include "hessmin/mesh.hpp"
#include "hessmin/operators.hpp"

namespace hessmin {

/// phi(r) = int_{B_r(x0)} |D2u|^p and sigma(r) = int_{B_r(x0)} |Du|^p on
/// strictly increasing radii. Both use the unregularized norms.
struct DecayProfile {
  Point center{0.0, 0.0, 0.0};
  double exponent = 2.0;
  std::vector<double> radii;
  std::vector<double> phi;
  std::vector<double> sigma;
  /// Per radius, the phi level treated as zero by fit_power_exponent:
  /// (kFlatCurvature * max|u|)^p |B_r|. Empty for profiles read from CSV.
  std::vector<double> phi_floor;
};

/// Relative curvature |D2u| / max|u| below which a Hessian counts as roundoff.
inline constexpr double kFlatCurvature = 1e-8;

/// Throws RegionOutOfRange if the largest ball leaves the interior zone,
/// RadiiTooFine if any radius is below 3h, InvalidArg if radii do not increase.
DecayProfile decay_profile(const ScalarField& u, const EnergyModel& model, const Point& x0,
                           std::span<const double> radii);

/// r_j = r_max * ratio^j for j = 0, 1, ... while r_j >= r_min, ascending.
std::vector<double> geometric_radii(double r_max, double ratio, double r_min);

/// `levels` radii geometrically spaced from r_min to r_max inclusive.
std::vector<double> radius_ladder(double r_min, double r_max, int levels);

enum class ProfileSeries { Phi, Sigma };

struct PowerFit {
  double beta = 0.0;
  double constant = 0.0;
  /// Root-mean-square misfit in log space.
  double residual = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

/// Least-squares line through (log r, log v) over the strictly positive
/// samples; zeros are excluded and counted. InsufficientData below 3 samples.
PowerFit fit_power_law(std::span<const double> r, std::span<const double> v);
/// Phi samples at or below profile.phi_floor are counted as zeros.
PowerFit fit_power_exponent(const DecayProfile& profile, ProfileSeries series);

/// int_{B_R}|D2u|^p over int_{B_2R \ B_R}|Du|^p, or over
/// int_{B_2R \ B_R}(|Du|/R)^p when `normalized`. DegenerateDenominator when the
/// annulus term vanishes under a nonzero numerator.
double caccioppoli_ratio(const ScalarField& u, const EnergyModel& model, const Point& x0, double radius,
                         bool normalized);

struct PairSampling {
  enum class Mode { AllPairs, Random, Auto };
  Mode mode = Mode::Auto;
  std::size_t count = 2'000'000;
  std::uint64_t seed = 0;

  static PairSampling all_pairs() { return {Mode::AllPairs, 0, 0}; }
  static PairSampling random(std::size_t count, std::uint64_t seed) { return {Mode::Random, count, seed}; }
  /// All pairs up to kAllPairsMaxNodes region nodes, random beyond.
  static PairSampling automatic(std::uint64_t seed = 0) { return {Mode::Auto, 2'000'000, seed}; }
};

inline constexpr std::size_t kAllPairsMaxNodes = 5000;

struct HolderReport {
  double alpha = 0.0;
  double seminorm = 0.0;
  double region_radius = 0.0;
  bool all_pairs = true;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
};

/// sup over sampled node pairs x != y in B_r0(0) of |v(x) - v(y)| / |x - y|^alpha,
/// maximized over components for vector fields.
HolderReport holder_seminorm(const VectorField& v, double alpha, double region_radius, PairSampling sampling);
HolderReport holder_seminorm(const ScalarField& v, double alpha, double region_radius, PairSampling sampling);

struct InterpolationCheck {
  /// int_{B_R}|Du|^p
  double lhs = 0.0;
  /// Smallest C with lhs <= C (phi(R) + R^p ||u||_inf^p).
  double c_min = 0.0;
  double phi = 0.0;
  double u_sup = 0.0;
};

InterpolationCheck interpolation_check(const ScalarField& u, const EnergyModel& model, double radius);

struct Cutoff {
  ScalarField eta;
  /// max of |D eta|^2 / eta over nodes with eta > 0, from the analytic derivative.
  double max_ratio = 0.0;
  /// Quadrature mass of eta (one up to rounding).
  double mass = 0.0;
  double normalization = 0.0;
};

/// eta(x) = C exp(1 / (|x - x0|^2 - 4R^2)) inside B_2R(x0), zero outside,
/// with C giving unit quadrature mass. Requires B_2R(x0) inside B_1.
Cutoff cutoff_eta(const Point& x0, double radius, std::shared_ptr<const Mesh> mesh);

/// |D eta|^2 / eta at distance rho from the centre, for normalization C.
double cutoff_ratio(double rho, double radius, double normalization) noexcept;

struct MorreyEstimate {
  /// beta / p clamped to [0, 1].
  double alpha = 0.0;
  double raw = 0.0;
  bool clamped = false;
  PowerFit fit;
};

MorreyEstimate morrey_exponent(const DecayProfile& profile, const EnergyModel& model);
MorreyEstimate morrey_exponent(const DecayProfile& profile, double p);

}  // namespace hessmin
