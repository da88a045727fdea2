#include "hessmin/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hessmin/error.hpp"
#include "hessmin/operators.hpp"

namespace hessmin {

EnergyModel::EnergyModel(double p, double eps, ScalarField weight, double delta)
    : p_(p), eps_(eps), weight_(std::move(weight)), delta_(delta) {
  if (!(p_ >= 2.0) || !std::isfinite(p_)) {
    throw Error(ErrorKind::InvalidArg, "exponent p must be >= 2, got " + std::to_string(p_));
  }
  if (!(eps_ >= 0.0) || !std::isfinite(eps_)) {
    throw Error(ErrorKind::InvalidArg, "regularization eps must be >= 0");
  }
  if (!(delta_ > 0.0)) throw Error(ErrorKind::InvalidArg, "weight lower bound delta must be > 0");
  weight_pow_.assign(weight_.size(), 0.0);
  for (std::size_t node : mesh().quadrature_nodes()) {
    const double a = weight_[node];
    if (!std::isfinite(a) || a < delta_ * (1.0 - 1e-14)) {
      throw Error(ErrorKind::InvalidArg, "weight " + std::to_string(a) + " below delta " +
                                             std::to_string(delta_) + " at node " +
                                             std::to_string(node));
    }
    weight_pow_[node] = std::pow(a, p_);
  }
}

EnergyModel EnergyModel::uniform(std::shared_ptr<const Mesh> mesh, double p, double eps) {
  return EnergyModel(p, eps, ScalarField(std::move(mesh), 1.0), 1.0);
}

EnergyModel EnergyModel::weighted(double p, double eps, ScalarField weight) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t node : weight.mesh().quadrature_nodes()) lo = std::min(lo, weight[node]);
  return EnergyModel(p, eps, std::move(weight), lo);
}

EnergyModel EnergyModel::with_eps(double eps) const {
  EnergyModel out = *this;
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidArg, "regularization eps must be >= 0");
  out.eps_ = eps;
  return out;
}

namespace {

// (y)^(p/2) with the p = 2 case kept exact.
inline double density(double y, double p) noexcept { return p == 2.0 ? y : std::pow(y, 0.5 * p); }

// p y^((p-2)/2), the derivative of density with respect to |H|^2, times two.
inline double stress_factor(double y, double p) noexcept {
  return p == 2.0 ? 2.0 : p * std::pow(y, 0.5 * p - 1.0);
}

// (y + delta)^q - y^q without cancellation against y^q.
inline double density_change(double y, double delta, double p) noexcept {
  if (p == 2.0) return delta;
  delta = std::max(delta, -y);
  const double q = 0.5 * p;
  if (y > 0.0) return std::pow(y, q) * std::expm1(q * std::log1p(delta / y));
  return std::pow(delta, q);
}

void require_finite(double e) {
  if (!std::isfinite(e)) throw Error(ErrorKind::NonFiniteEnergy, "energy evaluated to " + std::to_string(e));
}

}  // namespace

EnergyEvaluator::EnergyEvaluator(const EnergyModel& model)
    : model_(&model),
      hu_(model.mesh().node_count() * static_cast<std::size_t>(sym_size(model.mesh().dim())), 0.0),
      hd_(hu_.size(), 0.0) {}

double EnergyEvaluator::value(std::span<const double> u) {
  const Mesh& mesh = model_->mesh();
  const int dim = mesh.dim();
  const auto ncomp = static_cast<std::size_t>(sym_size(dim));
  const auto stride = detail::strides_of(mesh);
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  const double eps2 = model_->eps() * model_->eps();
  const double p = model_->p();
  const auto ap = model_->weight_pow();
  double sum = 0.0;
  for (std::size_t node : mesh.quadrature_nodes()) {
    double* h = hu_.data() + node * ncomp;
    detail::node_hessian(u.data(), node, dim, stride, inv_h2, h);
    sum += ap[node] * density(detail::contract(h, h, dim) + eps2, p);
  }
  const double e = sum * mesh.cell_volume();
  require_finite(e);
  return e;
}

double EnergyEvaluator::value_and_gradient(std::span<const double> u, std::span<double> grad) {
  const Mesh& mesh = model_->mesh();
  const int dim = mesh.dim();
  const auto ncomp = static_cast<std::size_t>(sym_size(dim));
  const auto stride = detail::strides_of(mesh);
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  const double vol = mesh.cell_volume();
  const double eps2 = model_->eps() * model_->eps();
  const double p = model_->p();
  const auto ap = model_->weight_pow();

  std::fill(grad.begin(), grad.end(), 0.0);
  double* g = grad.data();
  double sum = 0.0;
  for (std::size_t node : mesh.quadrature_nodes()) {
    double* h = hu_.data() + node * ncomp;
    detail::node_hessian(u.data(), node, dim, stride, inv_h2, h);
    const double y = detail::contract(h, h, dim) + eps2;
    sum += ap[node] * density(y, p);

    // Transpose of the Hessian stencils applied to S = coef * H.
    const double coef = vol * ap[node] * stress_factor(y, p) * inv_h2;
    const auto c = static_cast<std::ptrdiff_t>(node);
    int k = 0;
    for (int i = 0; i < dim; ++i) {
      const std::ptrdiff_t si = stride[static_cast<std::size_t>(i)];
      const double sii = coef * h[k++];
      g[c + si] += sii;
      g[c - si] += sii;
      g[c] -= 2.0 * sii;
      for (int j = i + 1; j < dim; ++j) {
        const std::ptrdiff_t sj = stride[static_cast<std::size_t>(j)];
        const double sij = 0.5 * coef * h[k++];
        g[c + si + sj] += sij;
        g[c - si - sj] += sij;
        g[c + si - sj] -= sij;
        g[c - si + sj] -= sij;
      }
    }
  }
  const auto classes = mesh.classes();
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (classes[i] != NodeClass::Interior) grad[i] = 0.0;
  }
  const double e = sum * vol;
  require_finite(e);
  return e;
}

void EnergyEvaluator::set_direction(std::span<const double> d) {
  const Mesh& mesh = model_->mesh();
  const int dim = mesh.dim();
  const auto ncomp = static_cast<std::size_t>(sym_size(dim));
  const auto stride = detail::strides_of(mesh);
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  // Only INTERIOR entries of d are meaningful; mask the rest.
  scratch_.assign(d.size(), 0.0);
  for (std::size_t node : mesh.interior_nodes()) scratch_[node] = d[node];
  for (std::size_t node : mesh.quadrature_nodes()) {
    detail::node_hessian(scratch_.data(), node, dim, stride, inv_h2, hd_.data() + node * ncomp);
  }
}

double EnergyEvaluator::change(double t) const {
  const Mesh& mesh = model_->mesh();
  const int dim = mesh.dim();
  const auto ncomp = static_cast<std::size_t>(sym_size(dim));
  const double eps2 = model_->eps() * model_->eps();
  const double p = model_->p();
  const auto ap = model_->weight_pow();
  double sum = 0.0;
  for (std::size_t node : mesh.quadrature_nodes()) {
    const double* hu = hu_.data() + node * ncomp;
    const double* hd = hd_.data() + node * ncomp;
    const double y = detail::contract(hu, hu, dim) + eps2;
    const double delta = t * (2.0 * detail::contract(hu, hd, dim) + t * detail::contract(hd, hd, dim));
    sum += ap[node] * density_change(y, delta, p);
  }
  const double e = sum * mesh.cell_volume();
  require_finite(e);
  return e;
}

double energy(const EnergyModel& model, const ScalarField& u) {
  require_same_mesh(model.mesh(), u.mesh(), "energy");
  EnergyEvaluator eval(model);
  return eval.value(u.values());
}

ScalarField energy_gradient(const EnergyModel& model, const ScalarField& u) {
  require_same_mesh(model.mesh(), u.mesh(), "energy_gradient");
  if (model.p() != 2.0 && model.eps() == 0.0) {
    throw Error(ErrorKind::DegenerateModel, "gradient needs eps > 0 when p != 2");
  }
  EnergyEvaluator eval(model);
  ScalarField g(u.mesh_ptr());
  eval.value_and_gradient(u.values(), g.values());
  const double inv_vol = 1.0 / u.mesh().cell_volume();
  for (double& v : g.values()) v *= inv_vol;
  return g;
}

double el_residual(const EnergyModel& model, const ScalarField& u, const ScalarField& phi) {
  require_same_mesh(model.mesh(), u.mesh(), "el_residual");
  require_same_mesh(model.mesh(), phi.mesh(), "el_residual");
  const Mesh& mesh = model.mesh();
  for (std::size_t node : mesh.band_nodes()) {
    if (phi[node] != 0.0) {
      throw Error(ErrorKind::UnsupportedTestFunction,
                  "test function is nonzero on BAND node " + std::to_string(node));
    }
  }
  // Exterior values of phi are never read: the test function is the INTERIOR part.
  std::vector<double> masked(phi.size(), 0.0);
  for (std::size_t node : mesh.interior_nodes()) masked[node] = phi[node];

  const int dim = mesh.dim();
  const auto stride = detail::strides_of(mesh);
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  const double eps2 = model.eps() * model.eps();
  const double p = model.p();
  const auto ap = model.weight_pow();
  double hu[6];
  double hp[6];
  double sum = 0.0;
  for (std::size_t node : mesh.quadrature_nodes()) {
    detail::node_hessian(u.values().data(), node, dim, stride, inv_h2, hu);
    detail::node_hessian(masked.data(), node, dim, stride, inv_h2, hp);
    const double y = detail::contract(hu, hu, dim) + eps2;
    sum += ap[node] * (stress_factor(y, p) / p) * detail::contract(hu, hp, dim);
  }
  return sum * mesh.cell_volume();
}

double energy_change(const EnergyModel& model, const ScalarField& u, const ScalarField& d, double t) {
  require_same_mesh(model.mesh(), u.mesh(), "energy_change");
  require_same_mesh(model.mesh(), d.mesh(), "energy_change");
  EnergyEvaluator eval(model);
  eval.value(u.values());
  eval.set_direction(d.values());
  return eval.change(t);
}

}  // namespace hessmin
