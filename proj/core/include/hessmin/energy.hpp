#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hessmin/mesh.hpp"

namespace hessmin {

/// Integrand a(x)^p (|D2u|^2 + eps^2)^(p/2) of the regularized, weighted
/// Hessian energy. The exponent p is independent of the dimension.
class EnergyModel {
 public:
  /// Validates p >= 2, eps >= 0, delta > 0 and weight >= delta on every
  /// quadrature node. Throws InvalidArg.
  EnergyModel(double p, double eps, ScalarField weight, double delta);

  /// a = 1, delta = 1.
  static EnergyModel uniform(std::shared_ptr<const Mesh> mesh, double p, double eps = 0.0);
  /// delta taken as the smallest weight over the quadrature nodes.
  static EnergyModel weighted(double p, double eps, ScalarField weight);

  double p() const noexcept { return p_; }
  double eps() const noexcept { return eps_; }
  double delta() const noexcept { return delta_; }
  const ScalarField& weight() const noexcept { return weight_; }
  const Mesh& mesh() const noexcept { return weight_.mesh(); }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return weight_.mesh_ptr(); }
  /// a(x)^p per node.
  std::span<const double> weight_pow() const noexcept { return weight_pow_; }

  EnergyModel with_eps(double eps) const;

 private:
  double p_;
  double eps_;
  ScalarField weight_;
  double delta_;
  std::vector<double> weight_pow_;
};

/// sum over quadrature nodes of a^p (|H|^2 + eps^2)^(p/2) h^n.
/// Throws NonFiniteEnergy on overflow or NaN input.
double energy(const EnergyModel& model, const ScalarField& u);

/// First variation density G: sum_i G_i v_i h^n = d/dt energy(u + t v) for
/// every v supported on INTERIOR nodes. Zero off the INTERIOR.
/// Throws DegenerateModel when p != 2 and eps = 0.
ScalarField energy_gradient(const EnergyModel& model, const ScalarField& u);

/// Weak Euler-Lagrange residual
///   sum a^p (|H_u|^2 + eps^2)^((p-2)/2) (H_u : H_phi) h^n.
/// Equals <energy_gradient(u), phi> h^n / p. `phi` must vanish on the BAND
/// (UnsupportedTestFunction otherwise).
double el_residual(const EnergyModel& model, const ScalarField& u, const ScalarField& phi);

/// energy(u + t d) - energy(u), evaluated term by term without cancellation
/// against the total. `d` is read on the INTERIOR only.
double energy_change(const EnergyModel& model, const ScalarField& u, const ScalarField& d, double t);

/// Reusable evaluation kernel behind the free functions above; keeps the
/// Hessians of the current point and of a search direction so trial steps
/// cost one pass over the quadrature nodes.
class EnergyEvaluator {
 public:
  explicit EnergyEvaluator(const EnergyModel& model);

  /// Energy of the node vector `u`; caches H(u).
  double value(std::span<const double> u);
  /// Energy and raw gradient dE/du (INTERIOR entries, zero elsewhere); caches H(u).
  double value_and_gradient(std::span<const double> u, std::span<double> grad);
  /// Caches H(d) for a direction supported on the INTERIOR.
  void set_direction(std::span<const double> d);
  /// E(u + t d) - E(u) for the cached u and d.
  double change(double t) const;

 private:
  const EnergyModel* model_;
  std::vector<double> hu_;
  std::vector<double> hd_;
  std::vector<double> scratch_;
};

}  // namespace hessmin
