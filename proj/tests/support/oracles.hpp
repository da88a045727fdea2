#pragma once

// Test-side reference computations, written without the library's kernels.

#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "hessmin/mesh.hpp"

namespace hessmin::testing {

inline constexpr double kPi = std::numbers::pi;

/// Energy recomputed from grid indices: every node with |k|^2 <= M^2 except
/// the axis tips, second differences read straight from the value array.
double naive_energy(const ScalarField& u, double p, double eps, const std::function<double(const Point&)>& weight);

/// Node class from exact integer arithmetic, independent of Mesh::build.
NodeClass brute_class(int half_width, std::span<const int> k);

/// Central difference (E(u + t v) - E(u - t v)) / 2t using naive_energy.
double fd_directional(const ScalarField& u, const ScalarField& v, double p, double eps, double t);

/// max over rho in (0, 2R) of C * 4 rho^2 / s^4 * exp(1/s), s = rho^2 - 4R^2,
/// sampled at `samples` evenly spaced radii.
double radial_cutoff_max_ratio(double radius, double normalization, int samples);

/// Reference unit-mass normalization of exp(1/(|x|^2 - 4R^2)) on B_2R in
/// dimension n, by 1-D radial quadrature with `samples` midpoints.
double radial_cutoff_normalization(double radius, int dim, int samples);

/// max_j phi_j / r_j^sigma.
double brute_min_c4(std::span<const double> r, std::span<const double> phi, double sigma);

/// Every (i, j), i < j with phi_i > c1 ((r_i/r_j)^alpha + mu) phi_j + c2 r_j^beta (plus slack).
std::vector<std::pair<std::size_t, std::size_t>> brute_lemma_a_violations(std::span<const double> r,
                                                                          std::span<const double> phi, double c1,
                                                                          double alpha, double mu, double c2,
                                                                          double beta);

/// Brute force over all j of phi_j / ((r_j/R0)^a phi_0 + sigma(floor sample of r_j^mu R0^(1-mu))).
double brute_min_c4_lemma_b(std::span<const double> r, std::span<const double> phi, std::span<const double> sigma,
                            double decay, double mu);

}  // namespace hessmin::testing
