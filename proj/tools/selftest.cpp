#include "selftest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hessmin/diagnostics.hpp"
#include "hessmin/energy.hpp"
#include "hessmin/error.hpp"
#include "hessmin/field_io.hpp"
#include "hessmin/lemmas.hpp"
#include "hessmin/operators.hpp"
#include "hessmin/polynomial.hpp"
#include "hessmin/solver.hpp"

namespace hessmin::tool {

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::uint64_t bits() { return rng_(); }

  Polynomial polynomial(int dim, int max_degree) {
    std::vector<Monomial> terms;
    for (int a = 0; a <= max_degree; ++a) {
      for (int b = 0; a + b <= max_degree; ++b) {
        for (int c = 0; a + b + c <= max_degree && (dim == 3 || c == 0); ++c) {
          terms.push_back({uniform(-1.0, 1.0), {a, b, c}});
        }
      }
    }
    return Polynomial(std::move(terms));
  }

  ScalarField field(const std::shared_ptr<const Mesh>& mesh, double scale) {
    ScalarField f(mesh);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = scale * uniform(-1.0, 1.0);
    return f;
  }

 private:
  std::mt19937_64 rng_;
};

struct Property {
  const char* name;
  std::function<std::string(Gen&)> check;  // empty string on success
};

std::string profile_monotone(Gen& gen) {
  const int dim = gen.integer(2, 3);
  const auto mesh = Mesh::build(dim, dim == 2 ? 2 * gen.integer(8, 16) + 1 : 2 * gen.integer(5, 7) + 1);
  const ScalarField u = gen.polynomial(dim, 4).sample(mesh);
  const EnergyModel model = EnergyModel::uniform(mesh, gen.uniform(2.0, 4.0));
  const double zone = 1.0 - 2.0 * mesh->spacing();
  std::vector<double> radii;
  for (double r = 3.0 * mesh->spacing(); r <= zone; r += gen.uniform(0.02, 0.2)) radii.push_back(r);
  if (radii.empty()) radii.push_back(zone);
  const DecayProfile prof = decay_profile(u, model, {0.0, 0.0, 0.0}, radii);
  for (std::size_t j = 1; j < radii.size(); ++j) {
    if (prof.phi[j] < prof.phi[j - 1] || prof.sigma[j] < prof.sigma[j - 1]) return "profile decreased";
  }
  return {};
}

std::string fit_exact(Gen& gen) {
  const double beta = gen.uniform(0.2, 3.0);
  const double c = gen.uniform(0.1, 10.0);
  std::vector<double> r;
  std::vector<double> v;
  for (double x = gen.uniform(0.01, 0.05); x < 1.0; x *= gen.uniform(1.2, 2.0)) {
    r.push_back(x);
    v.push_back(c * std::pow(x, beta));
  }
  if (r.size() < 3) return {};
  const PowerFit fit = fit_power_law(r, v);
  if (std::abs(fit.beta - beta) > 1e-10 * beta || std::abs(fit.constant - c) > 1e-10 * c) {
    return "beta " + std::to_string(fit.beta) + " C " + std::to_string(fit.constant);
  }
  return {};
}

std::string lemma_sound(Gen& gen) {
  LemmaParams params;
  params.alpha = gen.uniform(0.5, 3.0);
  params.beta = gen.uniform(0.1, params.alpha * 0.95);
  params.sigma_exp = gen.uniform(0.05, params.beta);
  params.c1 = gen.uniform(0.5, 4.0);
  params.mu = gen.uniform(0.0, 0.2);
  params.c2 = gen.uniform(0.0, 1.0);
  std::vector<double> r;
  std::vector<double> phi;
  double acc = 0.0;
  for (int j = 0, k = gen.integer(3, 12); j < k; ++j) {
    r.push_back(0.05 + 0.08 * j);
    acc += gen.uniform(0.0, 1.0);
    phi.push_back(acc);
  }
  params.c4 = check_lemma_a(r, phi, params).min_c4 * gen.uniform(1.0, 2.0);
  const LemmaVerdict v = check_lemma_a(r, phi, params);
  if (!v.conclusion_ok) return "conclusion failed with c4 >= minimal c4";
  if (v.hypothesis_ok != v.hypothesis_violations.empty()) return "verdict flag and violation list disagree";
  return {};
}

std::string field_round_trip(Gen& gen) {
  const int dim = gen.integer(2, 3);
  const auto mesh = Mesh::build(dim, 2 * gen.integer(4, dim == 2 ? 20 : 8) + 1);
  ScalarField u(mesh);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double mag = std::pow(10.0, gen.uniform(-300.0, 300.0));
    u[i] = gen.uniform(-1.0, 1.0) * mag;
  }
  const ScalarField back = parse_field(format_field(u));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(u[i]) != std::bit_cast<std::uint64_t>(back[i])) return "value " + std::to_string(i) + " changed";
  }
  return {};
}

std::string gradient_matches_fd(Gen& gen) {
  const int dim = gen.integer(2, 3);
  const auto mesh = Mesh::build(dim, dim == 2 ? 13 : 11);
  const double p = gen.uniform(2.0, 4.0);
  const EnergyModel model = EnergyModel::uniform(mesh, p, gen.uniform(1e-3, 1.0));
  const ScalarField u = gen.field(mesh, 0.1);
  ScalarField d = gen.field(mesh, 1.0);
  const ScalarField grad = energy_gradient(model, u);
  double pairing = 0.0;
  for (std::size_t node : mesh->interior_nodes()) pairing += grad[node] * d[node];
  pairing *= mesh->cell_volume();
  const double t = 1e-4;
  const double fd = (energy_change(model, u, d, t) - energy_change(model, u, d, -t)) / (2.0 * t);
  if (std::abs(pairing - fd) > 1e-5 * std::max(std::abs(fd), 1e-300)) {
    return "pairing " + std::to_string(pairing) + " vs fd " + std::to_string(fd);
  }
  return {};
}

std::string holder_nondecreasing_in_alpha(Gen& gen) {
  const auto mesh = Mesh::build(2, 2 * gen.integer(6, 12) + 1);
  const ScalarField u = gen.polynomial(2, 4).sample(mesh);
  const VectorField du = gradient(u);
  const double a1 = gen.uniform(0.05, 0.95);
  const double a2 = gen.uniform(a1, 1.0);
  const double s1 = holder_seminorm(du, a1, 0.5, PairSampling::all_pairs()).seminorm;
  const double s2 = holder_seminorm(du, a2, 0.5, PairSampling::all_pairs()).seminorm;
  if (s2 < s1 * (1.0 - 1e-12)) return "seminorm decreased as alpha grew";
  return {};
}

std::string quadratic_reproduced(Gen& gen) {
  const auto mesh = Mesh::build(2, 2 * gen.integer(5, 8) + 1);
  std::vector<Monomial> t;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) t.push_back({gen.uniform(-1.0, 1.0), {a, b, 0}});
  }
  const ScalarField g = Polynomial(std::move(t)).sample(mesh);
  SolveConfig cfg;
  cfg.init = InitKind::SeededRandom;
  cfg.seed = gen.bits();
  cfg.tol_grad = 1e-13;
  const SolveResult res = minimize(EnergyModel::uniform(mesh, 2.0), g, cfg);
  const double err = sup_difference(res.u, g);
  if (err > 1e-8) return "sup error " + std::to_string(err);
  return {};
}

}  // namespace

int run_selftest(std::uint64_t seed, int cases, std::ostream& out) {
  const std::vector<Property> props{
      {"profile_monotone", profile_monotone},
      {"power_fit_exact", fit_exact},
      {"lemma_a_soundness", lemma_sound},
      {"field_round_trip", field_round_trip},
      {"gradient_matches_finite_differences", gradient_matches_fd},
      {"holder_nondecreasing_in_alpha", holder_nondecreasing_in_alpha},
      {"quadratic_reproduced", quadratic_reproduced},
  };
  int failures = 0;
  for (std::size_t k = 0; k < props.size(); ++k) {
    Gen gen(seed * 1000003u + k);
    std::string msg;
    int c = 0;
    for (; c < cases && msg.empty(); ++c) {
      try {
        msg = props[k].check(gen);
      } catch (const Error& e) {
        msg = e.what();
      }
    }
    if (msg.empty()) {
      out << "PASS " << props[k].name << " (" << cases << " cases)\n";
    } else {
      ++failures;
      out << "FAIL " << props[k].name << " case " << c - 1 << ": " << msg << '\n';
    }
  }
  out << (failures == 0 ? "selftest: all properties hold\n" : "selftest: failures\n");
  return failures;
}

}  // namespace hessmin::tool
