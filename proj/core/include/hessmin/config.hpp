#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hessmin/energy.hpp"
#include "hessmin/mesh.hpp"
#include "hessmin/polynomial.hpp"
#include "hessmin/solver.hpp"

namespace hessmin {

/// a(x) = c0 + c1 |x|^2; a constant weight has c1 = 0.
struct WeightSpec {
  double c0 = 1.0;
  double c1 = 0.0;
  bool radial = false;

  /// Minimum of a over the closed unit ball.
  double delta() const noexcept;
  ScalarField sample(std::shared_ptr<const Mesh> mesh) const;
  std::string to_string() const;
};

/// Everything one run needs. Produced by parse_config / load_config.
struct RunConfig {
  int n = 2;
  int N = 0;
  double p = 2.0;
  WeightSpec weight;
  /// Boundary spec as written: a preset name or "poly:<terms>".
  std::string boundary_text;
  Polynomial boundary;
  /// Tolerances, eps schedule, init kind and seed.
  SolveConfig solve;
  std::string out_dir = "out";

  /// Decay-profile radii; empty selects 0.4 * 0.75^j down to 3h.
  std::vector<double> radii;
  Point center{0.0, 0.0, 0.0};
  /// Normalized Caccioppoli radii. The default list is trimmed to radii
  /// whose doubled ball fits; an explicit list must fit as given.
  std::vector<double> caccioppoli_radii{0.10, 0.15, 0.20, 0.25, 0.30, 0.35};
  bool caccioppoli_explicit = false;
  std::vector<double> holder_alphas{0.5};
  double holder_radius = 0.5;
  std::uint64_t holder_pairs = 2'000'000;
  /// Number of seeded-random starts for the uniqueness check; 0 skips it.
  int uniqueness = 0;

  std::shared_ptr<const Mesh> make_mesh() const;
  /// Model at eps = 0; the solver applies the schedule.
  EnergyModel make_model(std::shared_ptr<const Mesh> mesh) const;
  ScalarField boundary_field(std::shared_ptr<const Mesh> mesh) const;
  /// Replace every seed (solver, uniqueness, pair sampling).
  void override_seed(std::uint64_t seed) noexcept { solve.seed = seed; }
};

/// `key = value` lines; '#' starts a comment. Required keys: n, N, p, boundary.
/// ParseError for malformed input, ValidationError for values that violate
/// module preconditions. Messages start with the offending key.
RunConfig parse_config(std::string_view text);
/// IoError when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Keys accepted by parse_config.
std::vector<std::string_view> config_keys();

}  // namespace hessmin
