#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "hessmin/diagnostics.hpp"
#include "hessmin/error.hpp"
#include "hessmin/operators.hpp"
#include "hessmin/polynomial.hpp"
#include "hessmin/solver.hpp"
#include "oracles.hpp"

using namespace hessmin;
using hessmin::testing::Gen;
using hessmin::testing::kPi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hessmin::Error thrown";
  return ErrorKind::InvalidArg;
}

ScalarField paraboloid(const std::shared_ptr<const Mesh>& m) {
  return ScalarField::sample(m, [](const Point& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); });
}

std::vector<double> power_law(const std::vector<double>& r, double c, double beta) {
  std::vector<double> v;
  for (double x : r) v.push_back(c * std::pow(x, beta));
  return v;
}

}  // namespace

TEST(DecayProfile, AffineHasZeroPhiAndConstantGradientMass) {
  const auto m = Mesh::build(2, 129);
  const ScalarField u = ScalarField::sample(m, [](const Point& x) { return 0.3 + 2.0 * x[0] - x[1]; });
  const std::vector<double> radii{0.1, 0.2, 0.3, 0.4};
  const DecayProfile prof = decay_profile(u, EnergyModel::uniform(m, 2.0), {0.0, 0.0, 0.0}, radii);
  for (std::size_t j = 0; j < radii.size(); ++j) {
    EXPECT_LE(prof.phi[j], 1e-18);
    const double exact = 5.0 * kPi * radii[j] * radii[j];
    EXPECT_NEAR(prof.sigma[j], exact, 0.05 * exact);
  }
}

TEST(DecayProfile, ParaboloidClosedForm) {
  const auto m = Mesh::build(2, 257);
  const std::vector<double> radii{0.25};
  const DecayProfile prof = decay_profile(paraboloid(m), EnergyModel::uniform(m, 2.0), {0.0, 0.0, 0.0}, radii);
  EXPECT_NEAR(prof.phi[0], 2.0 * kPi * 0.0625, 0.03 * 2.0 * kPi * 0.0625);
}

TEST(DecayProfile, MonotoneForRandomFields) {
  Gen gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = trial % 3 == 2 ? 3 : 2;
    const auto m = Mesh::build(dim, dim == 3 ? 21 : gen.odd(33, 65));
    const ScalarField u = gen.field(m, 1.0);
    const double rmax = 0.8 * m->interior_radius();
    const std::vector<double> radii = radius_ladder(3.0 * m->spacing(), rmax, 6);
    const DecayProfile prof = decay_profile(u, EnergyModel::uniform(m, gen.uniform(2.0, 4.0)), {0.0, 0.0, 0.0}, radii);
    for (std::size_t j = 1; j < radii.size(); ++j) {
      ASSERT_GE(prof.phi[j], prof.phi[j - 1]);
      ASSERT_GE(prof.sigma[j], prof.sigma[j - 1]);
    }
  }
}

TEST(DecayProfile, MinimizerProfileBounded) {
  const auto m = Mesh::build(2, 65);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const SolveResult r = minimize(model, Polynomial::preset("cubic", 2).sample(m), SolveConfig{});
  const std::vector<double> radii = radius_ladder(0.1, 0.4, 7);
  const DecayProfile prof = decay_profile(r.u, model, {0.0, 0.0, 0.0}, radii);
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (j > 0) EXPECT_GE(prof.phi[j], prof.phi[j - 1]);
    const double scaled = prof.phi[j] / (radii[j] * radii[j]);
    EXPECT_TRUE(std::isfinite(scaled));
    EXPECT_LT(scaled, 100.0);
  }
}

TEST(DecayProfile, RoundoffCurvatureIsFlat) {
  const auto m = Mesh::build(2, 65);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField g = Polynomial::preset("affine", 2).sample(m);
  const SolveResult r = minimize(model, g, SolveConfig{});
  const std::vector<double> radii = radius_ladder(0.1, 0.4, 6);
  const DecayProfile prof = decay_profile(r.u, model, {0.0, 0.0, 0.0}, radii);
  EXPECT_EQ(kind_of([&] { fit_power_exponent(prof, ProfileSeries::Phi); }), ErrorKind::InsufficientData);
  // A curvature of 1e-6 relative to max|u| is kept.
  const ScalarField bent = ScalarField::sample(m, [](const Point& x) { return 1e-6 * x[0] * x[0]; });
  ScalarField sum(m);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = r.u[i] + bent[i];
  const PowerFit kept = fit_power_exponent(decay_profile(sum, model, {0.0, 0.0, 0.0}, radii), ProfileSeries::Phi);
  EXPECT_EQ(kept.used, 6u);
  EXPECT_NEAR(kept.beta, 2.0, 0.15);
}

TEST(DecayProfile, Errors) {
  const auto m = Mesh::build(2, 33);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField u(m);
  const Point o{0.0, 0.0, 0.0};
  const std::vector<double> too_big{0.2, 0.95};
  const std::vector<double> too_fine{0.05, 0.2};
  const std::vector<double> unordered{0.3, 0.2};
  EXPECT_EQ(kind_of([&] { decay_profile(u, model, o, too_big); }), ErrorKind::RegionOutOfRange);
  EXPECT_EQ(kind_of([&] { decay_profile(u, model, o, too_fine); }), ErrorKind::RadiiTooFine);
  EXPECT_EQ(kind_of([&] { decay_profile(u, model, o, unordered); }), ErrorKind::InvalidArg);
}

TEST(Radii, GeometricAndLadder) {
  const std::vector<double> g = geometric_radii(0.4, 0.75, 0.1);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.back(), 0.4);
  EXPECT_DOUBLE_EQ(g.front(), 0.4 * std::pow(0.75, 4));
  const std::vector<double> l = radius_ladder(0.1, 0.4, 3);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_DOUBLE_EQ(l.front(), 0.1);
  EXPECT_NEAR(l[1], 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(l.back(), 0.4);
}

TEST(PowerFit, ExactPowerLaw) {
  const std::vector<double> r = radius_ladder(0.05, 0.4, 6);
  const PowerFit fit = fit_power_law(r, power_law(r, 3.0, 1.5));
  EXPECT_NEAR(fit.beta, 1.5, 1.5e-10);
  EXPECT_NEAR(fit.constant, 3.0, 3e-10);
  EXPECT_LE(fit.residual, 1e-12);
  EXPECT_EQ(fit.used, 6u);
}

TEST(PowerFit, RandomExactLawsRecovered) {
  Gen gen(8);
  for (int k = 0; k < 25; ++k) {
    const double beta = gen.uniform(0.2, 4.0);
    const double c = gen.uniform(0.1, 10.0);
    const std::vector<double> r = radius_ladder(gen.uniform(0.01, 0.1), gen.uniform(0.2, 0.9), gen.integer(3, 12));
    const PowerFit fit = fit_power_law(r, power_law(r, c, beta));
    EXPECT_NEAR(fit.beta, beta, 1e-10 * beta);
    EXPECT_NEAR(fit.constant, c, 1e-10 * c);
  }
}

TEST(PowerFit, NoisyLawWithinTolerance) {
  Gen gen(21);
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> r = radius_ladder(0.1, 0.4, 8);
    std::vector<double> v = power_law(r, 2.0, 2.0);
    for (double& x : v) x *= 1.0 + gen.uniform(-0.1, 0.1);
    EXPECT_NEAR(fit_power_law(r, v).beta, 2.0, 0.15);
  }
}

TEST(PowerFit, ZerosExcludedAndInsufficientData) {
  const std::vector<double> r{0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<double> v{0.0, 0.04, 0.09, 0.16, 0.25};
  const PowerFit fit = fit_power_law(r, v);
  EXPECT_EQ(fit.excluded, 1u);
  EXPECT_EQ(fit.used, 4u);
  EXPECT_NEAR(fit.beta, 2.0, 1e-12);
  const std::vector<double> sparse{0.0, 0.0, 0.0, 0.16, 0.25};
  EXPECT_EQ(kind_of([&] { fit_power_law(r, sparse); }), ErrorKind::InsufficientData);
}

TEST(Morrey, QuotientAndClamp) {
  DecayProfile prof;
  prof.radii = radius_ladder(0.1, 0.4, 6);
  prof.sigma.assign(6, 1.0);
  prof.phi = power_law(prof.radii, 1.0, 1.0);
  EXPECT_NEAR(morrey_exponent(prof, 2.0).alpha, 0.5, 1e-12);
  prof.phi = power_law(prof.radii, 1.0, 0.8);
  EXPECT_NEAR(morrey_exponent(prof, 2.0).alpha, 0.4, 1e-12);
  prof.phi = power_law(prof.radii, 1.0, 3.0);
  const MorreyEstimate clamped = morrey_exponent(prof, 2.0);
  EXPECT_TRUE(clamped.clamped);
  EXPECT_EQ(clamped.alpha, 1.0);
  EXPECT_NEAR(clamped.raw, 1.5, 1e-12);
}

TEST(Caccioppoli, ParaboloidClosedForm) {
  const auto m = Mesh::build(2, 257);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField u = paraboloid(m);
  const double norm = caccioppoli_ratio(u, model, {0.0, 0.0, 0.0}, 0.25, true);
  const double raw = caccioppoli_ratio(u, model, {0.0, 0.0, 0.0}, 0.25, false);
  EXPECT_NEAR(norm, 4.0 / 15.0, 0.05 * 4.0 / 15.0);
  EXPECT_NEAR(raw, 4.0 / 15.0 / 0.0625, 0.05 * 4.0 / 15.0 / 0.0625);
}

TEST(Caccioppoli, AffineIsZeroAndErrors) {
  const auto m = Mesh::build(2, 129);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField affine = Polynomial::preset("affine", 2).sample(m);
  for (double r : {0.1, 0.2, 0.3}) EXPECT_EQ(caccioppoli_ratio(affine, model, {0.0, 0.0, 0.0}, r, true), 0.0);
  EXPECT_EQ(kind_of([&] { caccioppoli_ratio(affine, model, {0.0, 0.0, 0.0}, 0.49, true); }),
            ErrorKind::RegionOutOfRange);
  // Curved inside B_0.1, flat on the annulus B_0.4 minus B_0.2.
  const ScalarField bump = ScalarField::sample(m, [](const Point& x) {
    const double d2 = (x[0] * x[0] + x[1] * x[1]) / 0.01;
    return d2 < 1.0 ? std::pow(1.0 - d2, 3) : 0.0;
  });
  EXPECT_EQ(kind_of([&] { caccioppoli_ratio(bump, model, {0.0, 0.0, 0.0}, 0.2, true); }),
            ErrorKind::DegenerateDenominator);
}

TEST(Holder, IdentityGradient) {
  const auto m = Mesh::build(2, 65);
  const HolderReport rep = holder_seminorm(gradient(paraboloid(m)), 0.5, 0.5, PairSampling::all_pairs());
  EXPECT_NEAR(rep.seminorm, 1.0, 0.02);
  EXPECT_TRUE(rep.all_pairs);
}

TEST(Holder, ConstantIsZero) {
  const auto m = Mesh::build(2, 33);
  const ScalarField c(m, 2.5);
  EXPECT_EQ(holder_seminorm(c, 0.7, 0.5, PairSampling::all_pairs()).seminorm, 0.0);
  EXPECT_EQ(holder_seminorm(gradient(Polynomial::preset("affine", 2).sample(m)), 0.7, 0.5, PairSampling::all_pairs())
                .seminorm,
            0.0);
}

TEST(Holder, RootProfileAttainedAtOrigin) {
  const auto m = Mesh::build(2, 65);
  const ScalarField v = ScalarField::sample(m, [](const Point& x) { return std::pow(norm(x), 0.3); });
  EXPECT_NEAR(holder_seminorm(v, 0.3, 0.5, PairSampling::all_pairs()).seminorm, 1.0, 0.05);
}

// Pair distances in B_1/2 are at most 1, so |x - y|^alpha falls as alpha grows.
TEST(Holder, NondecreasingInAlphaAndDeterministic) {
  Gen gen(12);
  const auto m = Mesh::build(2, 33);
  const ScalarField u = gen.field(m, 1.0);
  const PairSampling rnd = PairSampling::random(20000, 4);
  double prev = 0.0;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 1.0}) {
    const double s = holder_seminorm(u, alpha, 0.5, rnd).seminorm;
    EXPECT_GE(s, prev);
    prev = s;
  }
  EXPECT_EQ(holder_seminorm(u, 0.5, 0.5, rnd).seminorm, holder_seminorm(u, 0.5, 0.5, rnd).seminorm);
  EXPECT_FALSE(holder_seminorm(u, 0.5, 0.5, rnd).all_pairs);
}

TEST(Holder, Errors) {
  const auto m = Mesh::build(2, 33);
  const ScalarField u(m);
  EXPECT_EQ(kind_of([&] { holder_seminorm(u, 0.0, 0.5, PairSampling::all_pairs()); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([&] { holder_seminorm(u, 0.5, 0.95, PairSampling::all_pairs()); }), ErrorKind::RegionOutOfRange);
  EXPECT_EQ(kind_of([&] { holder_seminorm(u, 0.5, 1e-4, PairSampling::all_pairs()); }), ErrorKind::EmptyRegion);
}

TEST(Interpolation, ZeroAndParaboloid) {
  const auto m = Mesh::build(2, 257);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const InterpolationCheck zero = interpolation_check(ScalarField(m), model, 0.5);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.c_min, 0.0);
  const InterpolationCheck q = interpolation_check(paraboloid(m), model, 0.5);
  EXPECT_NEAR(q.lhs, kPi / 32.0, 0.05 * kPi / 32.0);
  EXPECT_NEAR(q.c_min, 0.0601, 0.05 * 0.0601);
}

TEST(Interpolation, AffineFinite) {
  const auto m = Mesh::build(2, 129);
  const ScalarField u = ScalarField::sample(m, [](const Point& x) { return x[0] + x[1]; });
  const InterpolationCheck c = interpolation_check(u, EnergyModel::uniform(m, 2.0), 0.4);
  EXPECT_NEAR(c.lhs, 2.0 * kPi * 0.16, 0.05 * 2.0 * kPi * 0.16);
  EXPECT_LE(c.phi, 1e-18);
  EXPECT_TRUE(std::isfinite(c.c_min));
  EXPECT_NEAR(c.c_min, c.lhs / (0.16 * c.u_sup * c.u_sup), 1e-12 * c.c_min);
}

TEST(Cutoff, MassBoundaryAndOracle) {
  const auto m = Mesh::build(2, 257);
  const Cutoff c = cutoff_eta({0.0, 0.0, 0.0}, 0.25, m);
  EXPECT_NEAR(c.mass, 1.0, 0.01);
  // (±0.5, 0) lies exactly on the support sphere at N = 257.
  EXPECT_EQ(c.eta[m->node_at({64, 0, 0})], 0.0);
  EXPECT_EQ(c.eta[m->node_at({0, -64, 0})], 0.0);
  const double ref_norm = hessmin::testing::radial_cutoff_normalization(0.25, 2, 200000);
  EXPECT_NEAR(c.normalization, ref_norm, 0.01 * ref_norm);
  const double ref = hessmin::testing::radial_cutoff_max_ratio(0.25, c.normalization, 100000);
  EXPECT_NEAR(c.max_ratio, ref, 0.02 * ref);
}

TEST(Cutoff, FiniteAndRefinementStable) {
  Gen gen(5);
  for (int k = 0; k < 6; ++k) {
    const double r = gen.uniform(0.1, 0.2);
    const Point x0{gen.uniform(-0.2, 0.2), gen.uniform(-0.2, 0.2), 0.0};
    const double coarse = cutoff_eta(x0, r, Mesh::build(2, 129)).max_ratio;
    const double fine = cutoff_eta(x0, r, Mesh::build(2, 257)).max_ratio;
    EXPECT_TRUE(std::isfinite(coarse));
    EXPECT_NEAR(coarse, fine, 0.05 * fine);
  }
}

TEST(Cutoff, Errors) {
  const auto m = Mesh::build(2, 33);
  EXPECT_EQ(kind_of([&] { cutoff_eta({0.6, 0.0, 0.0}, 0.25, m); }), ErrorKind::RegionOutOfRange);
}
