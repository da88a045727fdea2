#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "hessmin/mesh.hpp"

namespace hessmin {

/// Number of stored components of a symmetric n x n matrix (upper triangle).
constexpr int sym_size(int dim) noexcept { return dim * (dim + 1) / 2; }

/// Position of entry (i, j) in the packed upper triangle, row by row:
/// n=2: 00 01 11; n=3: 00 01 02 11 12 22.
constexpr int sym_index(int i, int j, int dim) noexcept {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * dim - i * (i - 1) / 2 + (j - i);
}

/// n components per node; meaningful on INTERIOR nodes, zero elsewhere.
class VectorField {
 public:
  explicit VectorField(std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  int components() const noexcept { return mesh_->dim(); }
  std::span<const double> at(std::size_t node) const noexcept {
    return {data_.data() + node * static_cast<std::size_t>(components()),
            static_cast<std::size_t>(components())};
  }
  std::span<double> at(std::size_t node) noexcept {
    return {data_.data() + node * static_cast<std::size_t>(components()),
            static_cast<std::size_t>(components())};
  }
  /// Component `c` of every node as a scalar field.
  ScalarField component(int c) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> data_;
};

/// Packed symmetric Hessian per node (see sym_index). Filled on the nodes the
/// producing operator documents; zero elsewhere.
class HessianField {
 public:
  explicit HessianField(std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  int components() const noexcept { return sym_size(mesh_->dim()); }
  std::span<const double> at(std::size_t node) const noexcept {
    return {data_.data() + node * static_cast<std::size_t>(components()),
            static_cast<std::size_t>(components())};
  }
  std::span<double> at(std::size_t node) noexcept {
    return {data_.data() + node * static_cast<std::size_t>(components()),
            static_cast<std::size_t>(components())};
  }
  double entry(std::size_t node, int i, int j) const noexcept {
    return at(node)[static_cast<std::size_t>(sym_index(i, j, mesh_->dim()))];
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> data_;
};

/// Centered differences (u(x + h e_i) - u(x - h e_i)) / 2h at INTERIOR nodes.
VectorField gradient(const ScalarField& u);

/// Second differences at INTERIOR nodes; exact on quadratics.
HessianField hessian(const ScalarField& u);

/// Hessian on every quadrature node of the mesh (INTERIOR and BAND); BAND
/// stencils read the data on the BAND and the first EXTERIOR collar.
HessianField hessian_on_quadrature(const ScalarField& u);

/// Pointwise Frobenius norm; off-diagonal entries count twice.
ScalarField frob_norm(const HessianField& hess);

/// Euclidean norm of each node vector.
ScalarField pointwise_norm(const VectorField& v);

namespace detail {

/// Packed Hessian at one node from raw nodal values. `out` has sym_size(dim)
/// entries.
inline void node_hessian(const double* u, std::size_t node, int dim,
                         const std::array<std::ptrdiff_t, 3>& stride, double inv_h2,
                         double* out) noexcept {
  const auto c = static_cast<std::ptrdiff_t>(node);
  int k = 0;
  for (int i = 0; i < dim; ++i) {
    const std::ptrdiff_t si = stride[static_cast<std::size_t>(i)];
    out[k++] = (u[c + si] - 2.0 * u[c] + u[c - si]) * inv_h2;
    for (int j = i + 1; j < dim; ++j) {
      const std::ptrdiff_t sj = stride[static_cast<std::size_t>(j)];
      out[k++] = (u[c + si + sj] - u[c + si - sj] - u[c - si + sj] + u[c - si - sj]) *
                 (0.25 * inv_h2);
    }
  }
}

/// Frobenius inner product A:B of two packed symmetric matrices.
inline double contract(const double* a, const double* b, int dim) noexcept {
  double s = 0.0;
  int k = 0;
  for (int i = 0; i < dim; ++i) {
    s += a[k] * b[k];
    ++k;
    for (int j = i + 1; j < dim; ++j, ++k) s += 2.0 * a[k] * b[k];
  }
  return s;
}

inline std::array<std::ptrdiff_t, 3> strides_of(const Mesh& mesh) noexcept {
  return {mesh.stride(0), mesh.stride(1), mesh.dim() == 3 ? mesh.stride(2) : 0};
}

}  // namespace detail

}  // namespace hessmin
