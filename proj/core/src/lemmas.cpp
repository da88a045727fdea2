#include "hessmin/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hessmin/error.hpp"

namespace hessmin {

namespace {

constexpr double kSlack = 1e-12;

void check_samples(std::span<const double> r, std::span<const double> v, const char* what) {
  if (r.size() != v.size()) throw Error(ErrorKind::InvalidArg, std::string(what) + ": radius/value length mismatch");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1]))) {
      throw Error(ErrorKind::InvalidArg, std::string(what) + ": radii must be positive and strictly ascending");
    }
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw Error(ErrorKind::InvalidArg, std::string(what) + ": values must be finite and nonnegative");
    }
  }
}

void fail(const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); }

}  // namespace

bool within(double lhs, double rhs) noexcept {
  return lhs <= rhs + kSlack * std::max(std::abs(lhs), std::abs(rhs));
}

void LemmaParams::validate_a() const {
  if (!(c1 > 0.0)) fail("c1 must be positive");
  if (!(alpha > 0.0)) fail("alpha must be positive");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (!(c2 >= 0.0)) fail("c2 must be nonnegative");
  if (!(mu >= 0.0)) fail("mu must be nonnegative");
  if (!(beta < alpha)) fail("beta must be smaller than alpha");
  if (!(sigma_exp <= beta)) fail("sigma must not exceed beta");
  if (std::isnan(c4)) fail("c4 is NaN");
}

void LemmaParams::validate_b() const {
  if (!(gamma > 0.0)) fail("gamma must be positive");
  if (!(tau > 0.0 && tau < 1.0)) fail("tau must lie in (0,1)");
  if (!(decay >= 0.0)) fail("decay exponent must be nonnegative");
  if (!(match_tol >= 0.0)) fail("match tolerance must be nonnegative");
  if (std::isnan(c4)) fail("c4 is NaN");
}

LemmaVerdict check_lemma_a(std::span<const double> r, std::span<const double> phi, const LemmaParams& params) {
  params.validate_a();
  check_samples(r, phi, "check_lemma_a");
  LemmaVerdict v;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double rhs =
          params.c1 * (std::pow(r[i] / r[j], params.alpha) + params.mu) * phi[j] + params.c2 * std::pow(r[j], params.beta);
      ++v.pairs_checked;
      if (!within(phi[i], rhs)) v.hypothesis_violations.emplace_back(i, j);
    }
  }
  v.hypothesis_ok = v.hypothesis_violations.empty();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double scale = std::pow(r[j], params.sigma_exp);
    v.min_c4 = std::max(v.min_c4, phi[j] / scale);
    if (!within(phi[j], params.c4 * scale)) v.conclusion_violations.push_back(j);
  }
  v.conclusion_ok = v.conclusion_violations.empty();
  return v;
}

LemmaVerdict check_lemma_b(std::span<const double> r, std::span<const double> phi, std::span<const double> sigma,
                           const LemmaParams& params, double mu_interp) {
  params.validate_b();
  if (!(mu_interp > 0.0 && mu_interp < 1.0)) fail("mu_interp must lie in (0,1)");
  check_samples(r, phi, "check_lemma_b");
  check_samples(r, sigma, "check_lemma_b");
  LemmaVerdict v;
  v.match_tol = params.match_tol;
  v.gamma_emp = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double target = params.tau * r[j];
    const auto it = std::lower_bound(r.begin(), r.end(), target);
    std::size_t best = r.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (auto cand : {it, it == r.begin() ? it : it - 1}) {
      if (cand == r.end()) continue;
      const double gap = std::abs(*cand - target);
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<std::size_t>(cand - r.begin());
      }
    }
    if (best == r.size() || best_gap > params.match_tol || best == j) continue;
    ++v.pairs_checked;
    if (!within(phi[best], params.gamma * phi[j] + sigma[j])) v.hypothesis_violations.emplace_back(best, j);
    if (phi[j] > 0.0) v.gamma_emp = std::max(v.gamma_emp, (phi[best] - sigma[j]) / phi[j]);
  }
  if (v.pairs_checked == 0) {
    throw Error(ErrorKind::NoMatchingPairs,
                "no sample radius within " + std::to_string(params.match_tol) + " of tau R for any sampled R");
  }
  if (!std::isfinite(v.gamma_emp)) v.gamma_emp = 0.0;
  v.hypothesis_ok = v.hypothesis_violations.empty();

  const double r0 = r.back();
  const double phi0 = phi.back();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double mid = std::pow(r[j], mu_interp) * std::pow(r0, 1.0 - mu_interp);
    // Largest sample radius not above mid; mid >= r[j] keeps this in range.
    auto k = static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), mid * (1.0 + kSlack)) - r.begin());
    k = std::max<std::size_t>(k, 1) - 1;
    const double bound = std::pow(r[j] / r0, params.decay) * phi0 + sigma[k];
    if (bound > 0.0) {
      v.min_c4 = std::max(v.min_c4, phi[j] / bound);
    } else if (phi[j] > 0.0) {
      v.min_c4 = std::numeric_limits<double>::infinity();
    }
    if (!within(phi[j], params.c4 * bound) && !(bound == 0.0 && phi[j] == 0.0)) v.conclusion_violations.push_back(j);
  }
  v.conclusion_ok = v.conclusion_violations.empty();
  return v;
}

}  // namespace hessmin
