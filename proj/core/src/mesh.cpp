#include "hessmin/mesh.hpp"

#include <cmath>
#include <string>

#include "hessmin/error.hpp"

namespace hessmin {

std::shared_ptr<const Mesh> Mesh::build(int dim, int nodes_per_axis) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::InvalidArg, "dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (nodes_per_axis < 3 || nodes_per_axis % 2 == 0) {
    throw Error(ErrorKind::InvalidArg,
                "nodes per axis must be odd and >= 3, got " + std::to_string(nodes_per_axis));
  }
  // h = 2/(N-1); the interior zone |x| < 1 - 2h is empty when M = (N-1)/2 <= 2.
  if ((nodes_per_axis - 1) / 2 <= 2) {
    throw Error(ErrorKind::RejectedGeometry,
                "N = " + std::to_string(nodes_per_axis) + " leaves no interior node (1 - 2h <= 0)");
  }
  if (nodes_per_axis < 9) {
    throw Error(ErrorKind::InvalidArg,
                "nodes per axis must be >= 9, got " + std::to_string(nodes_per_axis));
  }
  return std::shared_ptr<const Mesh>(new Mesh(dim, nodes_per_axis));
}

Mesh::Mesh(int dim, int nodes_per_axis)
    : dim_(dim),
      n_(nodes_per_axis),
      half_((nodes_per_axis - 1) / 2),
      h_(1.0 / static_cast<double>((nodes_per_axis - 1) / 2)),
      cell_volume_(std::pow(h_, dim)) {
  std::size_t total = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = static_cast<std::ptrdiff_t>(total);
    total *= static_cast<std::size_t>(n_);
  }
  classes_.resize(total);

  const long outer = static_cast<long>(half_) * half_;
  const long inner = static_cast<long>(half_ - 2) * (half_ - 2);
  for (std::size_t node = 0; node < total; ++node) {
    const GridIndex k = grid_index(node);
    long r2 = 0;
    bool on_edge = false;
    for (int a = 0; a < dim_; ++a) {
      const long v = k[static_cast<std::size_t>(a)];
      r2 += v * v;
      on_edge = on_edge || v == half_ || v == -half_;
    }
    NodeClass c = NodeClass::Exterior;
    if (r2 < inner) {
      c = NodeClass::Interior;
      interior_.push_back(node);
    } else if (r2 <= outer) {
      c = NodeClass::Band;
      band_.push_back(node);
    }
    classes_[node] = c;
    if (c != NodeClass::Exterior && !on_edge) quadrature_.push_back(node);
  }
}

GridIndex Mesh::grid_index(std::size_t node) const noexcept {
  GridIndex k{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[static_cast<std::size_t>(a)] = static_cast<int>(node % static_cast<std::size_t>(n_)) - half_;
    node /= static_cast<std::size_t>(n_);
  }
  return k;
}

std::size_t Mesh::node_at(const GridIndex& k) const noexcept {
  std::size_t node = 0;
  for (int a = 0; a < dim_; ++a) {
    node = node * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(k[static_cast<std::size_t>(a)] + half_);
  }
  return node;
}

Point Mesh::position(std::size_t node) const noexcept {
  const GridIndex k = grid_index(node);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) {
    x[static_cast<std::size_t>(a)] = static_cast<double>(k[static_cast<std::size_t>(a)]) / half_;
  }
  return x;
}

bool Mesh::inside_interior_zone(const Point& x0, double r) const noexcept {
  return norm(x0) + r <= interior_radius() * (1.0 + 1e-12);
}

void Mesh::require_inside_interior_zone(const Point& x0, double r, const char* what) const {
  if (!inside_interior_zone(x0, r)) {
    throw Error(ErrorKind::RegionOutOfRange,
                std::string(what) + ": ball of radius " + std::to_string(r) +
                    " leaves the interior zone |x| <= " + std::to_string(interior_radius()));
  }
}

ScalarField::ScalarField(std::shared_ptr<const Mesh> mesh, double fill)
    : mesh_(std::move(mesh)), values_(mesh_->node_count(), fill) {}

ScalarField::ScalarField(std::shared_ptr<const Mesh> mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (values_.size() != mesh_->node_count()) {
    throw Error(ErrorKind::InvalidArg, "field has " + std::to_string(values_.size()) +
                                           " values, mesh has " +
                                           std::to_string(mesh_->node_count()) + " nodes");
  }
}

void require_same_mesh(const Mesh& a, const Mesh& b, const char* what) {
  if (!a.same_geometry(b)) throw Error(ErrorKind::InvalidArg, std::string(what) + ": mesh mismatch");
}

double norm(const Point& x) noexcept { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

double integrate_ball(const ScalarField& f, const Point& x0, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArg, "integrate_ball: radius must be positive");
  const Mesh& mesh = f.mesh();
  mesh.require_inside_interior_zone(x0, r, "integrate_ball");
  double sum = 0.0;
  mesh.for_each_in_ball(x0, r, [&](std::size_t node, double) { sum += f[node]; });
  return sum * mesh.cell_volume();
}

double integrate_annulus(const ScalarField& f, const Point& x0, double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_in < r_out)) {
    throw Error(ErrorKind::InvalidArg, "integrate_annulus: need 0 < r_in < r_out");
  }
  const Mesh& mesh = f.mesh();
  mesh.require_inside_interior_zone(x0, r_out, "integrate_annulus");
  double sum = 0.0;
  mesh.for_each_in_ball(x0, r_out, [&](std::size_t node, double d2) {
    if (!in_ball(d2, r_in)) sum += f[node];
  });
  return sum * mesh.cell_volume();
}

}  // namespace hessmin
