#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace hessmin {

/// Parameters of the two iteration lemmas.
/// A: phi(r) <= c1 [(r/R)^alpha + mu] phi(R) + c2 R^beta  =>  phi(r) <= c4 r^sigma_exp.
/// B: phi(tau R) <= gamma phi(R) + sigma(R)  =>  phi(R) <= c4 [(R/R0)^decay phi(R0) + sigma(R^mu R0^(1-mu))].
struct LemmaParams {
  double c1 = 1.0;
  double alpha = 1.0;
  double beta = 0.5;
  double mu = 0.0;
  double c2 = 0.0;
  double sigma_exp = 0.5;
  double gamma = 0.5;
  double tau = 0.5;
  /// Exponent a in the lemma B conclusion.
  double decay = 1.0;
  /// Constant tested by the conclusion; infinity accepts any finite bound.
  double c4 = std::numeric_limits<double>::infinity();
  /// Absolute tolerance for matching tau R to a sample radius.
  double match_tol = 1e-9;

  /// InvalidParams unless c1, alpha, beta > 0, c2, mu >= 0, beta < alpha and sigma_exp <= beta.
  void validate_a() const;
  /// InvalidParams unless gamma > 0, tau in (0,1), decay >= 0, match_tol >= 0.
  void validate_b() const;
};

struct LemmaVerdict {
  bool hypothesis_ok = true;
  bool conclusion_ok = true;
  /// Smallest c4 for which the conclusion holds over the samples.
  double min_c4 = 0.0;
  /// Lemma B only: max over matched pairs of (phi(tau R) - sigma(R)) / phi(R).
  double gamma_emp = 0.0;
  double match_tol = 0.0;
  std::size_t pairs_checked = 0;
  /// Sample index pairs (i, j) = (small radius, large radius) violating the
  /// hypothesis, in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> hypothesis_violations;
  /// Sample indices violating the conclusion.
  std::vector<std::size_t> conclusion_violations;
};

/// Radii must be positive and strictly ascending, values nonnegative.
LemmaVerdict check_lemma_a(std::span<const double> r, std::span<const double> phi, const LemmaParams& params);

/// `sigma` is sampled on the same radii as `phi`. NoMatchingPairs when no
/// sample lies within match_tol of tau R for any sampled R.
LemmaVerdict check_lemma_b(std::span<const double> r, std::span<const double> phi, std::span<const double> sigma,
                           const LemmaParams& params, double mu_interp);

/// lhs <= rhs up to relative rounding slack.
bool within(double lhs, double rhs) noexcept;

}  // namespace hessmin
