#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hessmin {

/// A point of R^n stored with three slots; unused trailing slots are zero.
using Point = std::array<double, 3>;
/// Signed lattice offsets of a node from the grid centre, in units of h.
using GridIndex = std::array<int, 3>;

enum class NodeClass : std::uint8_t { Interior, Band, Exterior };

/// Masked uniform Cartesian grid covering the closed unit ball of R^n.
///
/// Nodes sit at x = k h with k in {-M, ..., M}^n, M = (N - 1) / 2, h = 1 / M,
/// stored row-major with the last axis fastest. Classification is done in
/// exact integer arithmetic on |k|^2:
///   EXTERIOR  |x| > 1
///   BAND      1 - 2h <= |x| <= 1
///   INTERIOR  |x| < 1 - 2h
/// The BAND holds Dirichlet data and is two cells wide, so every Hessian
/// stencil (axis and diagonal offsets) of an INTERIOR node stays off the
/// EXTERIOR.
class Mesh {
 public:
  /// Throws InvalidArg for an unsupported dimension or an even N, and
  /// RejectedGeometry when 1 - 2h <= 0 leaves no INTERIOR node.
  static std::shared_ptr<const Mesh> build(int dim, int nodes_per_axis);

  int dim() const noexcept { return dim_; }
  int nodes_per_axis() const noexcept { return n_; }
  int half_width() const noexcept { return half_; }
  double spacing() const noexcept { return h_; }
  double cell_volume() const noexcept { return cell_volume_; }
  std::size_t node_count() const noexcept { return classes_.size(); }
  /// Radius 1 - 2h of the interior zone.
  double interior_radius() const noexcept { return 1.0 - 2.0 * h_; }

  NodeClass node_class(std::size_t node) const { return classes_[node]; }
  std::span<const NodeClass> classes() const noexcept { return classes_; }
  std::span<const std::size_t> interior_nodes() const noexcept { return interior_; }
  std::span<const std::size_t> band_nodes() const noexcept { return band_; }
  /// Nodes carrying an energy quadrature weight: every non-EXTERIOR node whose
  /// Hessian stencil stays on the grid (all but the 2n axis tips).
  std::span<const std::size_t> quadrature_nodes() const noexcept { return quadrature_; }

  GridIndex grid_index(std::size_t node) const noexcept;
  std::size_t node_at(const GridIndex& k) const noexcept;
  Point position(std::size_t node) const noexcept;
  std::ptrdiff_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }

  bool same_geometry(const Mesh& other) const noexcept {
    return dim_ == other.dim_ && n_ == other.n_;
  }

  /// True when |x0| + r <= 1 - 2h (up to rounding slack).
  bool inside_interior_zone(const Point& x0, double r) const noexcept;
  /// Throws RegionOutOfRange naming `what` unless inside_interior_zone(x0, r).
  void require_inside_interior_zone(const Point& x0, double r, const char* what) const;

  /// Visits every node with |x - x0| <= r (ties included) as f(node, |x - x0|^2).
  template <class F>
  void for_each_in_ball(const Point& x0, double r, F&& f) const;

 private:
  Mesh(int dim, int nodes_per_axis);

  int dim_;
  int n_;
  int half_;
  double h_;
  double cell_volume_;
  std::array<std::ptrdiff_t, 3> strides_{};
  std::vector<NodeClass> classes_;
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> band_;
  std::vector<std::size_t> quadrature_;
};

/// Relative slack applied to r^2 in ball membership so representational ties
/// at |x - x0| = r are counted inside.
inline constexpr double kBallTieSlack = 1e-12;

inline bool in_ball(double dist2, double r) noexcept {
  return dist2 <= r * r * (1.0 + kBallTieSlack);
}

/// Nodal values of a scalar function on a mesh. Values at EXTERIOR nodes are
/// carried; only the collar touched by BAND stencils is ever read.
class ScalarField {
 public:
  explicit ScalarField(std::shared_ptr<const Mesh> mesh, double fill = 0.0);
  ScalarField(std::shared_ptr<const Mesh> mesh, std::vector<double> values);

  template <class F>
  static ScalarField sample(std::shared_ptr<const Mesh> mesh, F&& f) {
    ScalarField out(std::move(mesh));
    for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(out.mesh_->position(i));
    return out;
  }

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> values_;
};

/// Throws InvalidArg unless both fields live on the same grid geometry.
void require_same_mesh(const Mesh& a, const Mesh& b, const char* what);

/// Midpoint rule over the nodes of B_r(x0): sum f(x_i) h^n. The ball must lie
/// inside the interior zone (RegionOutOfRange otherwise).
double integrate_ball(const ScalarField& f, const Point& x0, double r);

/// Midpoint rule over r_in < |x - x0| <= r_out.
double integrate_annulus(const ScalarField& f, const Point& x0, double r_in, double r_out);

double norm(const Point& x) noexcept;

// ---------------------------------------------------------------------------

template <class F>
void Mesh::for_each_in_ball(const Point& x0, double r, F&& f) const {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    const double c = x0[static_cast<std::size_t>(a)] * half_;
    const double reach = r * half_ * (1.0 + kBallTieSlack) + 1e-9;
    int l = static_cast<int>(std::ceil(c - reach));
    int u = static_cast<int>(std::floor(c + reach));
    lo[static_cast<std::size_t>(a)] = l < -half_ ? -half_ : l;
    hi[static_cast<std::size_t>(a)] = u > half_ ? half_ : u;
    if (lo[static_cast<std::size_t>(a)] > hi[static_cast<std::size_t>(a)]) return;
  }
  const double inv = 1.0 / half_;
  GridIndex k{0, 0, 0};
  for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) {
    for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1]) {
      for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2]) {
        double d2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
          const auto s = static_cast<std::size_t>(a);
          const double d = k[s] * inv - x0[s];
          d2 += d * d;
        }
        if (in_ball(d2, r)) f(node_at(k), d2);
      }
    }
  }
}

}  // namespace hessmin
