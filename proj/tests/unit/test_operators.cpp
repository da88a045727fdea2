#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hessmin/operators.hpp"
#include "hessmin/polynomial.hpp"

using namespace hessmin;
using hessmin::testing::Gen;

TEST(Gradient, ExactOnAffineAndQuadratic) {
  const auto m = Mesh::build(2, 33);
  const auto affine = ScalarField::sample(m, [](const Point& x) { return 0.3 - 2.0 * x[0] + 0.7 * x[1]; });
  const VectorField ga = gradient(affine);
  const auto quad = ScalarField::sample(m, [](const Point& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  const VectorField gq = gradient(quad);
  for (std::size_t node : m->interior_nodes()) {
    EXPECT_NEAR(ga.at(node)[0], -2.0, 1e-12);
    EXPECT_NEAR(ga.at(node)[1], 0.7, 1e-12);
    const Point x = m->position(node);
    EXPECT_NEAR(gq.at(node)[0], x[0], 1e-13);
    EXPECT_NEAR(gq.at(node)[1], x[1], 1e-13);
  }
}

TEST(Gradient, SecondOrderOnSine) {
  auto err = [](int big_n) {
    const auto m = Mesh::build(2, big_n);
    const auto u = ScalarField::sample(m, [](const Point& x) { return std::sin(M_PI * x[0]); });
    const VectorField g = gradient(u);
    double e = 0.0;
    for (std::size_t node : m->interior_nodes()) {
      e = std::max(e, std::abs(g.at(node)[0] - M_PI * std::cos(M_PI * m->position(node)[0])));
    }
    return e;
  };
  EXPECT_GE(std::log2(err(65) / err(129)), 1.9);
}

TEST(Hessian, MixedMonomialAndCubic) {
  const auto m = Mesh::build(2, 33);
  const HessianField hxy = hessian(ScalarField::sample(m, [](const Point& x) { return x[0] * x[1]; }));
  const HessianField hc = hessian(ScalarField::sample(m, [](const Point& x) { return x[0] * x[0] * x[0]; }));
  for (std::size_t node : m->interior_nodes()) {
    EXPECT_NEAR(hxy.entry(node, 0, 1), 1.0, 1e-12);
    EXPECT_NEAR(hxy.entry(node, 1, 0), 1.0, 1e-12);
    EXPECT_NEAR(hxy.entry(node, 0, 0), 0.0, 1e-12);
    EXPECT_NEAR(hxy.entry(node, 1, 1), 0.0, 1e-12);
    EXPECT_NEAR(hc.entry(node, 0, 0), 6.0 * m->position(node)[0], 1e-11);
  }
}

TEST(Hessian, QuadraticExactnessOnRandomQuadratics) {
  Gen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = gen.integer(2, 3);
    const auto m = Mesh::build(dim, dim == 2 ? 33 : 17);
    const Polynomial q = gen.polynomial(dim, 2);
    const HessianField h = hessian(q.sample(m));
    for (std::size_t node : m->interior_nodes()) {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          ASSERT_NEAR(h.entry(node, i, j), q.hessian({0, 0, 0}, i, j), 1e-10);
        }
      }
    }
  }
}

TEST(Operators, Linearity) {
  Gen gen(8);
  const auto m = Mesh::build(3, 13);
  const ScalarField u = gen.field(m, 1.0);
  const ScalarField v = gen.field(m, 1.0);
  const double a = gen.uniform(-2, 2);
  const double b = gen.uniform(-2, 2);
  ScalarField w(m);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a * u[i] + b * v[i];
  const HessianField hu = hessian(u), hv = hessian(v), hw = hessian(w);
  const VectorField gu = gradient(u), gv = gradient(v), gw = gradient(w);
  for (std::size_t node : m->interior_nodes()) {
    for (int k = 0; k < 6; ++k) {
      const auto s = static_cast<std::size_t>(k);
      EXPECT_NEAR(hw.at(node)[s], a * hu.at(node)[s] + b * hv.at(node)[s], 1e-9 * 144.0);
    }
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(gw.at(node)[c], a * gu.at(node)[c] + b * gv.at(node)[c], 1e-12 * 12.0);
  }
}

TEST(FrobNorm, KnownMatrices) {
  const auto m = Mesh::build(2, 9);
  HessianField h(m);
  const std::size_t origin = m->node_at({0, 0, 0});
  h.at(origin)[0] = 1.0;
  h.at(origin)[2] = 1.0;
  EXPECT_NEAR(frob_norm(h)[origin], std::sqrt(2.0), 1e-15);
  HessianField off(m);
  off.at(origin)[1] = 1.0;
  EXPECT_NEAR(frob_norm(off)[origin], std::sqrt(2.0), 1e-15);
  EXPECT_EQ(frob_norm(HessianField(m))[origin], 0.0);
}

TEST(FrobNorm, NonnegativeAndHomogeneous) {
  Gen gen(21);
  const auto m = Mesh::build(3, 11);
  const HessianField h = hessian(gen.field(m, 1.0));
  const double c = gen.uniform(-3, 3);
  HessianField hc(m);
  for (std::size_t node = 0; node < m->node_count(); ++node) {
    for (std::size_t k = 0; k < 6; ++k) hc.at(node)[k] = c * h.at(node)[k];
  }
  const ScalarField n1 = frob_norm(h), n2 = frob_norm(hc);
  for (std::size_t node : m->interior_nodes()) {
    EXPECT_GE(n1[node], 0.0);
    EXPECT_NEAR(n2[node], std::abs(c) * n1[node], 1e-12 * n1[node]);
  }
}

TEST(Operators, PackedIndexLayout) {
  EXPECT_EQ(sym_size(2), 3);
  EXPECT_EQ(sym_size(3), 6);
  EXPECT_EQ(sym_index(0, 1, 2), 1);
  EXPECT_EQ(sym_index(1, 1, 2), 2);
  EXPECT_EQ(sym_index(0, 2, 3), 2);
  EXPECT_EQ(sym_index(2, 1, 3), 4);
  EXPECT_EQ(sym_index(2, 2, 3), 5);
}
