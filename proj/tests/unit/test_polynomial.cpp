#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hessmin/error.hpp"
#include "hessmin/polynomial.hpp"

using namespace hessmin;
using hessmin::testing::Gen;

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

}  // namespace

TEST(Polynomial, PresetValues) {
  const Point x{0.3, -0.7, 0.2};
  EXPECT_DOUBLE_EQ(Polynomial::preset("affine", 2)(x), 0.5 + 0.3 + 0.35);
  EXPECT_DOUBLE_EQ(Polynomial::preset("affine", 3)(x), 0.5 + 0.3 + 0.35 + 0.05);
  EXPECT_DOUBLE_EQ(Polynomial::preset("saddle", 2)(x), 0.5 * (0.09 - 0.49));
  EXPECT_DOUBLE_EQ(Polynomial::preset("cubic", 2)(x), 0.3 * 0.3 * 0.3);
  EXPECT_NEAR(Polynomial::preset("paraboloid", 3)(x), 0.5 * (0.09 + 0.49 + 0.04), 1e-15);
  EXPECT_NEAR(Polynomial::preset("radial-quartic", 2)(x), (0.09 + 0.49) * (0.09 + 0.49), 1e-15);
  EXPECT_NEAR(Polynomial::preset("radial-quartic", 3)(x), 0.62 * 0.62, 1e-15);
  EXPECT_EQ(kind_of([] { Polynomial::preset("wobbly", 2); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([] { Polynomial::preset("saddle", 4); }), ErrorKind::InvalidArg);
  for (std::string_view name : preset_names()) EXPECT_NO_THROW(Polynomial::preset(name, 2));
}

TEST(Polynomial, DerivativesMatchFiniteDifferences) {
  Gen gen(14);
  for (int k = 0; k < 30; ++k) {
    const int dim = gen.integer(2, 3);
    const Polynomial q = gen.polynomial(dim, 4);
    const Point x{gen.uniform(-0.6, 0.6), gen.uniform(-0.6, 0.6), dim == 3 ? gen.uniform(-0.6, 0.6) : 0.0};
    const double t = 1e-5;
    const Point g = q.gradient(x);
    for (int i = 0; i < dim; ++i) {
      Point a = x, b = x;
      a[i] += t;
      b[i] -= t;
      EXPECT_NEAR(g[i], (q(a) - q(b)) / (2 * t), 1e-8);
      const Point ga = q.gradient(a), gb = q.gradient(b);
      for (int j = 0; j < dim; ++j) {
        EXPECT_NEAR(q.hessian(x, i, j), (ga[j] - gb[j]) / (2 * t), 1e-7);
        EXPECT_EQ(q.hessian(x, i, j), q.hessian(x, j, i));
      }
    }
  }
}

TEST(Polynomial, ParseRoundTrip) {
  const Polynomial q = Polynomial::parse("0.5; 1*x1; -2*x1^2*x2");
  ASSERT_EQ(q.terms().size(), 3u);
  EXPECT_EQ(q.degree(), 3);
  EXPECT_EQ(q.variables(), 2);
  const Point x{0.4, -0.3, 0.0};
  EXPECT_DOUBLE_EQ(q(x), 0.5 + 0.4 - 2.0 * 0.16 * -0.3);
  const Polynomial r = Polynomial::parse(q.to_string());
  Gen gen(1);
  for (int k = 0; k < 20; ++k) {
    const Point y{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
    EXPECT_EQ(q(y), r(y));
  }
  EXPECT_EQ(Polynomial::parse("1*x3").variables(), 3);
}

TEST(Polynomial, ParseErrors) {
  for (const char* bad : {"", "abc", "1*y1", "1*x4", "1*x1^", "1*x1^-1", "1**x1", "1;;2", "1*x1^5"}) {
    const ErrorKind k = kind_of([&] { Polynomial::parse(bad); });
    EXPECT_TRUE(k == ErrorKind::ParseError || k == ErrorKind::InvalidArg) << bad;
  }
  EXPECT_EQ(kind_of([] { Polynomial(std::vector<Monomial>{{1.0, {3, 2, 0}}}); }), ErrorKind::InvalidArg);
  EXPECT_EQ(kind_of([] { Polynomial(std::vector<Monomial>{{1.0, {-1, 0, 0}}}); }), ErrorKind::InvalidArg);
}

TEST(Polynomial, SampleOnMesh) {
  const auto m = Mesh::build(3, 9);
  const Polynomial q = Polynomial::preset("cubic", 3);
  const ScalarField f = q.sample(m);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], q(m->position(i)));
}
