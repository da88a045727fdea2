#include "quadratic_form.hpp"

namespace hessmin::detail {

std::vector<std::pair<double, std::vector<Tap>>> hessian_rows(const Mesh& mesh, std::size_t node) {
  std::vector<std::pair<double, std::vector<Tap>>> rows;
  const double inv_h2 = 1.0 / (mesh.spacing() * mesh.spacing());
  const auto c = static_cast<std::ptrdiff_t>(node);
  auto at = [](std::ptrdiff_t i) { return static_cast<std::size_t>(i); };
  for (int i = 0; i < mesh.dim(); ++i) {
    const std::ptrdiff_t si = mesh.stride(i);
    rows.push_back({1.0, {{at(c + si), inv_h2}, {at(c), -2.0 * inv_h2}, {at(c - si), inv_h2}}});
    for (int j = i + 1; j < mesh.dim(); ++j) {
      const std::ptrdiff_t sj = mesh.stride(j);
      const double q = 0.25 * inv_h2;
      rows.push_back({2.0,
                      {{at(c + si + sj), q}, {at(c + si - sj), -q}, {at(c - si + sj), -q}, {at(c - si - sj), q}}});
    }
  }
  return rows;
}

void assemble_quadratic(const EnergyModel& model, const ScalarField* g, std::vector<Entry>& q,
                        std::vector<double>* rhs, std::vector<long>& unknown) {
  const Mesh& mesh = model.mesh();
  const auto interior = mesh.interior_nodes();
  unknown.assign(mesh.node_count(), -1);
  for (std::size_t k = 0; k < interior.size(); ++k) unknown[interior[k]] = static_cast<long>(k);
  if (rhs) rhs->assign(interior.size(), 0.0);
  const auto ap = model.weight_pow();

  // E = sum_x w_x sum_rows mult * (r_free . u_free + r_fixed . g_fixed)^2
  for (std::size_t node : mesh.quadrature_nodes()) {
    const double w = ap[node] * mesh.cell_volume();
    for (const auto& [mult, taps] : hessian_rows(mesh, node)) {
      double fixed = 0.0;
      if (rhs) {
        for (const Tap& t : taps) {
          if (unknown[t.node] < 0) fixed += t.coef * (*g)[t.node];
        }
      }
      for (const Tap& a : taps) {
        const long ia = unknown[a.node];
        if (ia < 0) continue;
        if (rhs) (*rhs)[static_cast<std::size_t>(ia)] -= w * mult * a.coef * fixed;
        for (const Tap& b : taps) {
          const long ib = unknown[b.node];
          if (ib >= 0) q.push_back({ia, ib, w * mult * a.coef * b.coef});
        }
      }
    }
  }
}

}  // namespace hessmin::detail
