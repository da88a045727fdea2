#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "hessmin/energy.hpp"
#include "hessmin/error.hpp"
#include "hessmin/polynomial.hpp"
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

double pairing(const ScalarField& g, const ScalarField& v) {
  double s = 0.0;
  for (std::size_t node : g.mesh().interior_nodes()) s += g[node] * v[node];
  return s * g.mesh().cell_volume();
}

// Bump supported on INTERIOR nodes around x0.
ScalarField bump(const std::shared_ptr<const Mesh>& m, const Point& x0, double r) {
  ScalarField f(m);
  for (std::size_t node : m->interior_nodes()) {
    const Point x = m->position(node);
    double d2 = 0.0;
    for (int a = 0; a < m->dim(); ++a) d2 += (x[a] - x0[a]) * (x[a] - x0[a]);
    if (d2 < r * r) f[node] = std::pow(1.0 - d2 / (r * r), 3);
  }
  return f;
}

}  // namespace

TEST(Energy, AffineIsZero) {
  for (double p : {2.0, 3.0, 4.5}) {
    const auto m = Mesh::build(2, 33);
    const ScalarField u = Polynomial::preset("affine", 2).sample(m);
    EXPECT_NEAR(energy(EnergyModel::uniform(m, p), u), 0.0, 1e-20);
  }
}

TEST(Energy, ParaboloidClosedForms) {
  const auto m2 = Mesh::build(2, 257);
  const ScalarField u2 = Polynomial::preset("paraboloid", 2).sample(m2);
  EXPECT_NEAR(energy(EnergyModel::uniform(m2, 2.0), u2), 2.0 * kPi, 0.02 * 2.0 * kPi);
  const EnergyModel doubled(2.0, 0.0, ScalarField(m2, 2.0), 2.0);
  EXPECT_NEAR(energy(doubled, u2), 8.0 * kPi, 0.02 * 8.0 * kPi);

  const auto m3 = Mesh::build(3, 65);
  const ScalarField u3 = Polynomial::preset("paraboloid", 3).sample(m3);
  const double exact = 4.0 * std::sqrt(3.0) * kPi;
  EXPECT_NEAR(energy(EnergyModel::uniform(m3, 3.0), u3), exact, 0.05 * exact);
}

TEST(Energy, MatchesIndependentRecomputation) {
  Gen gen(101);
  for (int trial = 0; trial < 12; ++trial) {
    const int dim = gen.integer(2, 3);
    const auto m = Mesh::build(dim, gen.odd(9, dim == 2 ? 31 : 15));
    const ScalarField u = gen.field(m, 1.0);
    const double p = gen.uniform(2.0, 4.0);
    const double eps = trial % 3 == 0 ? 0.0 : gen.uniform(0.0, 1.0);
    const double c0 = gen.uniform(0.5, 2.0);
    const double c1 = gen.uniform(0.0, 1.0);
    auto w = [&](const Point& x) { return c0 + c1 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); };
    const EnergyModel model = EnergyModel::weighted(p, eps, ScalarField::sample(m, w));
    const double ref = hessmin::testing::naive_energy(u, p, eps, w);
    EXPECT_NEAR(energy(model, u), ref, 1e-12 * ref);
  }
}

TEST(Energy, GradientMatchesFiniteDifferences) {
  Gen gen(202);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = gen.integer(2, 3);
    const auto m = Mesh::build(dim, dim == 2 ? 15 : 11);
    const double p = gen.uniform(2.0, 4.0);
    const double eps = gen.uniform(1e-3, 0.5);
    const ScalarField u = gen.field(m, 0.05);
    const ScalarField v = gen.interior_field(m, 1.0);
    const double g = pairing(energy_gradient(EnergyModel::uniform(m, p, eps), u), v);
    const double fd = hessmin::testing::fd_directional(u, v, p, eps, 1e-6);
    EXPECT_NEAR(g, fd, 1e-5 * std::abs(fd)) << "trial " << trial;
  }
}

TEST(Energy, GradientSpecExampleP3) {
  Gen gen(7);
  const auto m = Mesh::build(2, 17);
  const ScalarField u = gen.field(m, 0.1);
  const ScalarField v = gen.interior_field(m, 1.0);
  const double g = pairing(energy_gradient(EnergyModel::uniform(m, 3.0, 1e-2), u), v);
  const double fd = hessmin::testing::fd_directional(u, v, 3.0, 1e-2, 1e-5);
  EXPECT_NEAR(g, fd, 1e-5 * std::abs(fd));
}

TEST(Energy, GradientVanishesForQuadraticAndZero) {
  const auto m = Mesh::build(2, 33);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField g = energy_gradient(model, Polynomial::preset("saddle", 2).sample(m));
  double scale = 0.0;
  for (std::size_t node : m->interior_nodes()) scale = std::max(scale, std::abs(g[node]));
  // Quadrature covers every stencil that reaches an unknown, so the discrete
  // Euler-Lagrange equation holds up to the band as well.
  EXPECT_LT(scale, 1e-7);
  const ScalarField z = energy_gradient(EnergyModel::uniform(m, 3.0, 0.1), ScalarField(m, 0.0));
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z[i], 0.0);
}

TEST(Energy, DegenerateModelRejected) {
  const auto m = Mesh::build(2, 9);
  EXPECT_EQ(kind_of([&] { energy_gradient(EnergyModel::uniform(m, 3.0, 0.0), ScalarField(m)); }),
            ErrorKind::DegenerateModel);
}

TEST(Energy, ResidualGradientConsistency) {
  Gen gen(303);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = gen.integer(2, 3);
    const auto m = Mesh::build(dim, dim == 2 ? 21 : 13);
    const double p = gen.uniform(2.0, 5.0);
    const EnergyModel model = EnergyModel::uniform(m, p, gen.uniform(1e-3, 1.0));
    const ScalarField u = gen.field(m, 0.3);
    const ScalarField phi = gen.interior_field(m, 1.0);
    const double res = el_residual(model, u, phi);
    const double pair = pairing(energy_gradient(model, u), phi);
    EXPECT_NEAR(pair, p * res, 1e-12 * std::abs(pair));
  }
}

TEST(Energy, ResidualOfQuadraticVanishes) {
  const auto m = Mesh::build(2, 33);
  const EnergyModel model = EnergyModel::uniform(m, 2.0);
  const ScalarField u = Polynomial::preset("saddle", 2).sample(m);
  for (const Point& c : {Point{0, 0, 0}, Point{0.3, -0.2, 0}, Point{-0.5, 0.1, 0}}) {
    const ScalarField phi = bump(m, c, 0.3);
    // Hessian mass of phi sets the scale.
    const double mass = std::sqrt(energy(model, phi));
    EXPECT_LT(std::abs(el_residual(model, u, phi)), 1e-10 * mass);
  }
  EXPECT_EQ(el_residual(model, u, ScalarField(m)), 0.0);
}

TEST(Energy, ResidualRejectsTestFunctionOnBand) {
  const auto m = Mesh::build(2, 17);
  ScalarField phi(m);
  phi[m->band_nodes()[0]] = 1.0;
  EXPECT_EQ(kind_of([&] { el_residual(EnergyModel::uniform(m, 2.0), ScalarField(m), phi); }),
            ErrorKind::UnsupportedTestFunction);
}

TEST(Energy, ConvexityOnRandomSegments) {
  Gen gen(404);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = Mesh::build(2, 17);
    const EnergyModel model = EnergyModel::uniform(m, gen.uniform(2.0, 4.0), gen.uniform(0.0, 0.5));
    const ScalarField base = gen.field(m, 1.0);
    ScalarField u = base;
    ScalarField v = base;
    for (std::size_t node : m->interior_nodes()) {
      u[node] = gen.uniform(-1, 1);
      v[node] = gen.uniform(-1, 1);
    }
    const double t = gen.unit();
    ScalarField w(m);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t * u[i] + (1.0 - t) * v[i];
    const double eu = energy(model, u), ev = energy(model, v);
    EXPECT_LE(energy(model, w), t * eu + (1.0 - t) * ev + 1e-12 * std::max(eu, ev));
  }
}

TEST(Energy, HomogeneityAtZeroEps) {
  Gen gen(505);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = Mesh::build(gen.integer(2, 3), 13);
    const double p = gen.uniform(2.0, 4.0);
    const EnergyModel model = EnergyModel::uniform(m, p);
    const ScalarField u = gen.field(m, 1.0);
    const double c = gen.uniform(-3.0, 3.0);
    ScalarField cu = u;
    for (std::size_t i = 0; i < cu.size(); ++i) cu[i] *= c;
    const double e = energy(model, u);
    EXPECT_NEAR(energy(model, cu), std::pow(std::abs(c), p) * e, 1e-12 * std::pow(std::abs(c), p) * e);
  }
}

TEST(Energy, ModelValidationAndNonFinite) {
  const auto m = Mesh::build(2, 9);
  EXPECT_EQ(kind_of([&] { EnergyModel::uniform(m, 1.5); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([&] { EnergyModel::uniform(m, 2.0, -1.0); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([&] { EnergyModel(2.0, 0.0, ScalarField(m, 0.5), 1.0); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([&] { EnergyModel(2.0, 0.0, ScalarField(m, 1.0), 0.0); }), ErrorKind::InvalidArg);
  ScalarField bad(m);
  bad[m->interior_nodes()[0]] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { energy(EnergyModel::uniform(m, 2.0), bad); }), ErrorKind::NonFiniteEnergy);
}

TEST(Energy, EnergyChangeMatchesDifference) {
  Gen gen(606);
  const auto m = Mesh::build(2, 17);
  const EnergyModel model = EnergyModel::uniform(m, 3.0, 0.1);
  const ScalarField u = gen.field(m, 1.0);
  const ScalarField d = gen.interior_field(m, 1.0);
  ScalarField ud = u;
  for (std::size_t i = 0; i < u.size(); ++i) ud[i] += 0.3 * d[i];
  const double direct = energy(model, ud) - energy(model, u);
  EXPECT_NEAR(energy_change(model, u, d, 0.3), direct, 1e-10 * std::abs(direct));
}
