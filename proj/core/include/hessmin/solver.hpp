#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hessmin/energy.hpp"
#include "hessmin/mesh.hpp"

namespace hessmin {

enum class InitKind { Zero, BoundaryExtension, SeededRandom };
enum class DescentDirection { Lbfgs, Steepest };
/// Initial inverse-Hessian model of the quasi-Newton update.
enum class Preconditioner { None, Biharmonic, Auto };
enum class StopReason { GradientTolerance, EnergyStagnation, MaxIterations };

std::string_view to_string(InitKind kind) noexcept;
std::string_view to_string(StopReason reason) noexcept;
std::string_view to_string(Preconditioner kind) noexcept;
inline constexpr std::size_t kAutoPreconditionMax3d = 5000;

struct SolveConfig {
  /// Stop when max_i |dE/du_i| (the density gradient scaled by h^n) drops below this.
  double tol_grad = 1e-10;
  /// Stop when the relative energy decrease over the last `stagnation_window`
  /// accepted steps drops below this.
  double tol_energy = 1e-18;
  int stagnation_window = 10;
  /// Iteration cap per eps stage. Hitting it is reported, not fatal.
  int max_iter = 20000;
  /// Strictly decreasing; must end above zero unless p = 2 (for p = 2 the
  /// schedule is replaced by {0}).
  std::vector<double> eps_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  InitKind init = InitKind::BoundaryExtension;
  std::uint64_t seed = 0;
  DescentDirection direction = DescentDirection::Lbfgs;
  /// Biharmonic: the inverse of the p = 2 Hessian (sparse Cholesky, built
  /// once per solve) scaled by the newest curvature pair. None: scaled identity.
  /// Auto: Biharmonic when p = 2 (in 2-D, and in 3-D up to
  /// kAutoPreconditionMax3d unknowns where the factorization fill stays
  /// cheap); None otherwise.
  Preconditioner preconditioner = Preconditioner::Auto;
  int history = 8;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;

  /// Throws InvalidArg on a malformed configuration for exponent p.
  void validate(double p) const;
};

struct StageReport {
  double eps = 0.0;
  int iterations = 0;
  /// Energy after every accepted step, starting with the stage's initial energy.
  std::vector<double> energies;
  double grad_norm = 0.0;
  StopReason stop = StopReason::MaxIterations;
};

struct SolveReport {
  std::vector<StageReport> stages;
  double final_energy = 0.0;
  double final_grad_norm = 0.0;
  double eps_final = 0.0;
  double wall_seconds = 0.0;
  bool max_iter_hit = false;

  int total_iterations() const noexcept;
};

struct SolveResult {
  ScalarField u;
  SolveReport report;
};

/// Minimize the energy over INTERIOR values with every other node held at g.
/// Runs one monotone line-search descent per eps stage, warm-starting each
/// stage from the previous one. Throws LineSearchStall when no decreasing
/// step is found.
SolveResult minimize(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg);

/// Same, starting from `initial` (its non-INTERIOR values are replaced by g).
SolveResult minimize_from(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg,
                          const ScalarField& initial);

/// g on every non-INTERIOR node; INTERIOR filled per `kind`.
ScalarField initial_guess(const ScalarField& g, InitKind kind, std::uint64_t seed);

/// Exact minimizer for p = 2, eps = 0 by dense Cholesky of the assembled
/// quadratic form. Throws TooLarge above `kOracleMaxUnknowns` unknowns and
/// SingularSystem if the factorization fails.
ScalarField solve_linear_oracle(const EnergyModel& model, const ScalarField& g);
inline constexpr std::size_t kOracleMaxUnknowns = 4000;

/// Largest sup-norm difference between minimizers started from seeded-random
/// guesses with seeds cfg.seed, cfg.seed + 1, ..., cfg.seed + k - 1.
double uniqueness_check(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg, int k);
/// Same with explicit seeds (at least two).
double uniqueness_check(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg,
                        std::span<const std::uint64_t> seeds);

/// max |a - b| over non-EXTERIOR nodes.
double sup_difference(const ScalarField& a, const ScalarField& b);

}  // namespace hessmin
