#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hessmin/mesh.hpp"

namespace hessmin {

struct Monomial {
  double coef = 0.0;
  std::array<int, 3> exps{0, 0, 0};

  int degree() const noexcept { return exps[0] + exps[1] + exps[2]; }
};

/// Polynomial in up to three variables with total degree at most 4.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 4;

  Polynomial() = default;
  /// InvalidArg on a negative exponent or total degree above kMaxDegree.
  explicit Polynomial(std::vector<Monomial> terms);

  /// Named boundary data: affine, saddle, cubic, radial-quartic, paraboloid.
  static Polynomial preset(std::string_view name, int dim);
  /// Terms separated by ';', each `coef` optionally followed by factors
  /// `*x1`, `*x2^3`, ... e.g. "0.5; 1*x1; -2*x1^2*x2". ParseError on bad input.
  static Polynomial parse(std::string_view text);

  double operator()(const Point& x) const noexcept;
  Point gradient(const Point& x) const noexcept;
  /// Entry (i, j) of the Hessian.
  double hessian(const Point& x, int i, int j) const noexcept;
  int degree() const noexcept;
  /// Highest variable index used plus one.
  int variables() const noexcept;

  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  std::string to_string() const;

  ScalarField sample(std::shared_ptr<const Mesh> mesh) const;

 private:
  std::vector<Monomial> terms_;
};

/// Names accepted by Polynomial::preset.
std::vector<std::string_view> preset_names();

}  // namespace hessmin
