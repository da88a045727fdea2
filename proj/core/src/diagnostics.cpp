#include "hessmin/diagnostics.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>
#include <string>

#include "hessmin/error.hpp"

namespace hessmin {

namespace {

ScalarField power_of(const ScalarField& magnitude, double p) {
  ScalarField out(magnitude.mesh_ptr());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(magnitude[i], p);
  return out;
}

// |D2u|^p and |Du|^p; both vanish off the INTERIOR.
std::pair<ScalarField, ScalarField> integrands(const ScalarField& u, double p) {
  return {power_of(frob_norm(hessian(u)), p), power_of(pointwise_norm(gradient(u)), p)};
}

}  // namespace

DecayProfile decay_profile(const ScalarField& u, const EnergyModel& model, const Point& x0,
                           std::span<const double> radii) {
  require_same_mesh(model.mesh(), u.mesh(), "decay_profile");
  const Mesh& mesh = u.mesh();
  if (radii.empty()) throw Error(ErrorKind::InvalidArg, "decay_profile: no radii");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (j > 0 && !(radii[j] > radii[j - 1])) {
      throw Error(ErrorKind::InvalidArg, "decay_profile: radii must be strictly increasing");
    }
    if (radii[j] < 3.0 * mesh.spacing() * (1.0 - 1e-12)) {
      throw Error(ErrorKind::RadiiTooFine, "radius " + std::to_string(radii[j]) + " is below 3h = " +
                                               std::to_string(3.0 * mesh.spacing()));
    }
  }
  mesh.require_inside_interior_zone(x0, radii.back(), "decay_profile");

  const auto [hess_p, grad_p] = integrands(u, model.p());
  double u_sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mesh.node_class(i) != NodeClass::Exterior) u_sup = std::max(u_sup, std::abs(u[i]));
  }
  const double flat = std::pow(kFlatCurvature * u_sup, model.p());
  const ScalarField ones(u.mesh_ptr(), 1.0);
  DecayProfile out;
  out.center = x0;
  out.exponent = model.p();
  for (double r : radii) {
    out.radii.push_back(r);
    out.phi.push_back(integrate_ball(hess_p, x0, r));
    out.sigma.push_back(integrate_ball(grad_p, x0, r));
    out.phi_floor.push_back(flat * integrate_ball(ones, x0, r));
  }
  return out;
}

std::vector<double> geometric_radii(double r_max, double ratio, double r_min) {
  if (!(r_max > 0.0) || !(ratio > 0.0 && ratio < 1.0) || !(r_min > 0.0)) {
    throw Error(ErrorKind::InvalidArg, "geometric_radii: need r_max > 0, ratio in (0,1), r_min > 0");
  }
  std::vector<double> out;
  for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= ratio) out.push_back(r);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> radius_ladder(double r_min, double r_max, int levels) {
  if (levels < 2 || !(r_min > 0.0) || !(r_max > r_min)) {
    throw Error(ErrorKind::InvalidArg, "radius_ladder: need levels >= 2 and 0 < r_min < r_max");
  }
  std::vector<double> out;
  const double step = std::log(r_max / r_min) / (levels - 1);
  for (int j = 0; j < levels; ++j) out.push_back(r_min * std::exp(step * j));
  out.back() = r_max;
  return out;
}

PowerFit fit_power_law(std::span<const double> r, std::span<const double> v) {
  if (r.size() != v.size()) throw Error(ErrorKind::InvalidArg, "fit_power_law: length mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  PowerFit fit;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > 0.0 && v[i] > 0.0 && std::isfinite(v[i])) {
      lx.push_back(std::log(r[i]));
      ly.push_back(std::log(v[i]));
    } else {
      ++fit.excluded;
    }
  }
  fit.used = lx.size();
  if (fit.used < 3) {
    throw Error(ErrorKind::InsufficientData, "power fit needs 3 positive samples, have " + std::to_string(fit.used));
  }
  const double n = static_cast<double>(fit.used);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::InsufficientData, "power fit needs distinct radii");
  fit.beta = sxy / sxx;
  const double intercept = my - fit.beta * mx;
  fit.constant = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (intercept + fit.beta * lx[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

PowerFit fit_power_exponent(const DecayProfile& profile, ProfileSeries series) {
  if (series == ProfileSeries::Sigma) return fit_power_law(profile.radii, profile.sigma);
  std::vector<double> phi = profile.phi;
  for (std::size_t j = 0; j < phi.size() && j < profile.phi_floor.size(); ++j) {
    if (phi[j] <= profile.phi_floor[j]) phi[j] = 0.0;
  }
  return fit_power_law(profile.radii, phi);
}

double caccioppoli_ratio(const ScalarField& u, const EnergyModel& model, const Point& x0, double radius,
                         bool normalized) {
  require_same_mesh(model.mesh(), u.mesh(), "caccioppoli_ratio");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArg, "caccioppoli_ratio: radius must be positive");
  u.mesh().require_inside_interior_zone(x0, 2.0 * radius, "caccioppoli_ratio");
  const auto [hess_p, grad_p] = integrands(u, model.p());
  const double lhs = integrate_ball(hess_p, x0, radius);
  double rhs = integrate_annulus(grad_p, x0, radius, 2.0 * radius);
  if (normalized) rhs /= std::pow(radius, model.p());
  if (rhs == 0.0) {
    if (lhs > 0.0) {
      throw Error(ErrorKind::DegenerateDenominator,
                  "gradient mass vanishes on the annulus while the Hessian mass is " + std::to_string(lhs));
    }
    return 0.0;
  }
  return lhs / rhs;
}

namespace {

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

HolderReport holder_impl(const Mesh& mesh, int components, const std::function<double(std::size_t, int)>& value,
                         double alpha, double region_radius, PairSampling sampling) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArg, "Hoelder exponent must lie in (0,1]");
  mesh.require_inside_interior_zone({0.0, 0.0, 0.0}, region_radius, "holder_seminorm");
  std::vector<std::size_t> nodes;
  mesh.for_each_in_ball({0.0, 0.0, 0.0}, region_radius, [&](std::size_t node, double) { nodes.push_back(node); });
  if (nodes.size() < 2) throw Error(ErrorKind::EmptyRegion, "Hoelder region holds fewer than two nodes");

  std::vector<Point> pos(nodes.size());
  std::vector<double> vals(nodes.size() * static_cast<std::size_t>(components));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    pos[i] = mesh.position(nodes[i]);
    for (int c = 0; c < components; ++c) {
      vals[i * static_cast<std::size_t>(components) + static_cast<std::size_t>(c)] = value(nodes[i], c);
    }
  }
  auto ratio = [&](std::size_t i, std::size_t j) {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double d = pos[i][static_cast<std::size_t>(a)] - pos[j][static_cast<std::size_t>(a)];
      d2 += d * d;
    }
    double num = 0.0;
    for (int c = 0; c < components; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      num = std::max(num, std::abs(vals[i * static_cast<std::size_t>(components) + ci] -
                                   vals[j * static_cast<std::size_t>(components) + ci]));
    }
    return num == 0.0 ? 0.0 : num * std::exp(-0.5 * alpha * std::log(d2));
  };

  HolderReport rep;
  rep.alpha = alpha;
  rep.region_radius = region_radius;
  bool all_pairs = sampling.mode == PairSampling::Mode::AllPairs ||
                   (sampling.mode == PairSampling::Mode::Auto && nodes.size() <= kAllPairsMaxNodes);
  if (sampling.mode == PairSampling::Mode::AllPairs && nodes.size() > kAllPairsMaxNodes) {
    throw Error(ErrorKind::InvalidArg, "all-pairs sampling limited to " + std::to_string(kAllPairsMaxNodes) +
                                           " region nodes, have " + std::to_string(nodes.size()));
  }
  rep.all_pairs = all_pairs;
  if (all_pairs) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) rep.seminorm = std::max(rep.seminorm, ratio(i, j));
    }
    rep.pairs = nodes.size() * (nodes.size() - 1) / 2;
  } else {
    if (sampling.count == 0) throw Error(ErrorKind::InvalidArg, "random sampling needs a positive pair count");
    std::mt19937_64 rng(sampling.seed);
    const double n = static_cast<double>(nodes.size());
    for (std::size_t k = 0; k < sampling.count; ++k) {
      const auto i = std::min(nodes.size() - 1, static_cast<std::size_t>(unit_uniform(rng) * n));
      auto j = std::min(nodes.size() - 2, static_cast<std::size_t>(unit_uniform(rng) * (n - 1.0)));
      if (j >= i) ++j;
      rep.seminorm = std::max(rep.seminorm, ratio(i, j));
    }
    rep.pairs = sampling.count;
    rep.seed = sampling.seed;
  }
  return rep;
}

}  // namespace

HolderReport holder_seminorm(const VectorField& v, double alpha, double region_radius, PairSampling sampling) {
  return holder_impl(
      v.mesh(), v.components(), [&](std::size_t node, int c) { return v.at(node)[static_cast<std::size_t>(c)]; },
      alpha, region_radius, sampling);
}

HolderReport holder_seminorm(const ScalarField& v, double alpha, double region_radius, PairSampling sampling) {
  return holder_impl(
      v.mesh(), 1, [&](std::size_t node, int) { return v[node]; }, alpha, region_radius, sampling);
}

InterpolationCheck interpolation_check(const ScalarField& u, const EnergyModel& model, double radius) {
  require_same_mesh(model.mesh(), u.mesh(), "interpolation_check");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArg, "interpolation_check: radius must be positive");
  const Mesh& mesh = u.mesh();
  mesh.require_inside_interior_zone({0.0, 0.0, 0.0}, radius, "interpolation_check");
  const double p = model.p();
  const auto [hess_p, grad_p] = integrands(u, p);
  InterpolationCheck out;
  out.lhs = integrate_ball(grad_p, {0.0, 0.0, 0.0}, radius);
  out.phi = integrate_ball(hess_p, {0.0, 0.0, 0.0}, radius);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mesh.node_class(i) != NodeClass::Exterior) out.u_sup = std::max(out.u_sup, std::abs(u[i]));
  }
  const double denom = out.phi + std::pow(radius, p) * std::pow(out.u_sup, p);
  if (denom == 0.0) {
    if (out.lhs > 0.0) {
      throw Error(ErrorKind::DegenerateDenominator, "u vanishes while its gradient mass is positive");
    }
    out.c_min = 0.0;
  } else {
    out.c_min = out.lhs / denom;
  }
  return out;
}

double cutoff_ratio(double rho, double radius, double normalization) noexcept {
  const double s = rho * rho - 4.0 * radius * radius;
  if (!(s < 0.0)) return 0.0;
  const double s2 = s * s;
  return normalization * 4.0 * rho * rho / (s2 * s2) * std::exp(1.0 / s);
}

Cutoff cutoff_eta(const Point& x0, double radius, std::shared_ptr<const Mesh> mesh) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArg, "cutoff_eta: radius must be positive");
  if (norm(x0) + 2.0 * radius > 1.0 + 1e-12) {
    throw Error(ErrorKind::RegionOutOfRange, "cutoff_eta: B_2R(x0) leaves the unit ball");
  }
  const double four_r2 = 4.0 * radius * radius;
  Cutoff out{ScalarField(mesh), 0.0, 0.0, 0.0};
  std::vector<std::pair<std::size_t, double>> support;
  double raw_mass = 0.0;
  mesh->for_each_in_ball(x0, 2.0 * radius, [&](std::size_t node, double d2) {
    const double s = d2 - four_r2;
    if (s < 0.0) {
      const double v = std::exp(1.0 / s);
      out.eta[node] = v;
      raw_mass += v;
      support.emplace_back(node, d2);
    }
  });
  raw_mass *= mesh->cell_volume();
  if (!(raw_mass > 0.0)) throw Error(ErrorKind::EmptyRegion, "cutoff_eta: no grid node inside B_2R(x0)");
  out.normalization = 1.0 / raw_mass;
  double mass = 0.0;
  for (const auto& [node, d2] : support) {
    out.eta[node] *= out.normalization;
    mass += out.eta[node];
    if (out.eta[node] > 0.0) {
      out.max_ratio = std::max(out.max_ratio, cutoff_ratio(std::sqrt(d2), radius, out.normalization));
    }
  }
  out.mass = mass * mesh->cell_volume();
  return out;
}

MorreyEstimate morrey_exponent(const DecayProfile& profile, const EnergyModel& model) {
  return morrey_exponent(profile, model.p());
}

MorreyEstimate morrey_exponent(const DecayProfile& profile, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidArg, "morrey_exponent: p must be positive");
  MorreyEstimate out;
  out.fit = fit_power_exponent(profile, ProfileSeries::Phi);
  out.raw = out.fit.beta / p;
  out.clamped = !(out.raw > 0.0 && out.raw < 1.0);
  out.alpha = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

}  // namespace hessmin
