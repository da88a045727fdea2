#include "hessmin/operators.hpp"

#include <cmath>

namespace hessmin {

VectorField::VectorField(std::shared_ptr<const Mesh> mesh)
    : mesh_(std::move(mesh)),
      data_(mesh_->node_count() * static_cast<std::size_t>(mesh_->dim()), 0.0) {}

ScalarField VectorField::component(int c) const {
  ScalarField out(mesh_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i)[static_cast<std::size_t>(c)];
  return out;
}

HessianField::HessianField(std::shared_ptr<const Mesh> mesh)
    : mesh_(std::move(mesh)),
      data_(mesh_->node_count() * static_cast<std::size_t>(sym_size(mesh_->dim())), 0.0) {}

VectorField gradient(const ScalarField& u) {
  const Mesh& mesh = u.mesh();
  VectorField out(u.mesh_ptr());
  const double inv_2h = 0.5 / mesh.spacing();
  const auto vals = u.values();
  for (std::size_t node : mesh.interior_nodes()) {
    auto g = out.at(node);
    for (int a = 0; a < mesh.dim(); ++a) {
      const std::ptrdiff_t s = mesh.stride(a);
      const auto c = static_cast<std::ptrdiff_t>(node);
      g[static_cast<std::size_t>(a)] =
          (vals[static_cast<std::size_t>(c + s)] - vals[static_cast<std::size_t>(c - s)]) * inv_2h;
    }
  }
  return out;
}

namespace {

HessianField hessian_over(const ScalarField& u, std::span<const std::size_t> nodes) {
  const Mesh& mesh = u.mesh();
  HessianField out(u.mesh_ptr());
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  const auto stride = detail::strides_of(mesh);
  for (std::size_t node : nodes) {
    detail::node_hessian(u.values().data(), node, mesh.dim(), stride, inv_h2, out.at(node).data());
  }
  return out;
}

}  // namespace

HessianField hessian(const ScalarField& u) { return hessian_over(u, u.mesh().interior_nodes()); }

HessianField hessian_on_quadrature(const ScalarField& u) {
  return hessian_over(u, u.mesh().quadrature_nodes());
}

ScalarField frob_norm(const HessianField& hess) {
  const Mesh& mesh = hess.mesh();
  ScalarField out(hess.mesh_ptr());
  for (std::size_t node = 0; node < mesh.node_count(); ++node) {
    const double* h = hess.at(node).data();
    out[node] = std::sqrt(detail::contract(h, h, mesh.dim()));
  }
  return out;
}

ScalarField pointwise_norm(const VectorField& v) {
  ScalarField out(v.mesh_ptr());
  for (std::size_t node = 0; node < out.size(); ++node) {
    double s = 0.0;
    for (double c : v.at(node)) s += c * c;
    out[node] = std::sqrt(s);
  }
  return out;
}

}  // namespace hessmin
