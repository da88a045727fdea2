#include "hessmin/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "hessmin/field_io.hpp"
#include "hessmin/operators.hpp"

namespace hessmin {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArg:
    case ErrorKind::RejectedGeometry:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return kExitConfig;
    case ErrorKind::NonFiniteEnergy:
    case ErrorKind::DegenerateModel:
    case ErrorKind::LineSearchStall:
    case ErrorKind::TooLarge:
    case ErrorKind::SingularSystem:
      return kExitSolver;
    case ErrorKind::RegionOutOfRange:
    case ErrorKind::UnsupportedTestFunction:
    case ErrorKind::InsufficientData:
    case ErrorKind::RadiiTooFine:
    case ErrorKind::DegenerateDenominator:
    case ErrorKind::EmptyRegion:
    case ErrorKind::InvalidParams:
    case ErrorKind::NoMatchingPairs:
      return kExitDiagnostics;
    case ErrorKind::IoError:
    case ErrorKind::FormatError:
      return kExitIo;
  }
  return kExitConfig;
}

void Report::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
void Report::add(std::string key, double value) { add(std::move(key), format_g17(value)); }
void Report::add(std::string key, long long value) { add(std::move(key), std::to_string(value)); }
void Report::add_flag(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }

std::string Report::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return {};
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + ": " + v + '\n';
  return out;
}

namespace {

std::string radius_key(const char* prefix, double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%.4g", prefix, r);
  return buf;
}

std::string point_text(const Point& x, int dim) {
  std::string s;
  for (int i = 0; i < dim; ++i) {
    if (i > 0) s += ',';
    s += format_g17(x[static_cast<std::size_t>(i)]);
  }
  return s;
}

void add_fit(Report& report, const DecayProfile& profile, double p) {
  try {
    const MorreyEstimate m = morrey_exponent(profile, p);
    report.add("beta", m.fit.beta);
    report.add("beta_constant", m.fit.constant);
    report.add("beta_residual", m.fit.residual);
    report.add("beta_samples", static_cast<long long>(m.fit.used));
    report.add("beta_excluded", static_cast<long long>(m.fit.excluded));
    report.add("alpha", m.alpha);
    report.add("alpha_raw", m.raw);
    report.add_flag("alpha_clamped", m.clamped);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
    report.add("beta", std::string(to_string(e.kind())));
    report.add("alpha", std::string(to_string(e.kind())));
  }
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, std::ostream* log) {
  const auto mesh = cfg.make_mesh();
  const EnergyModel model = cfg.make_model(mesh);
  const ScalarField g = cfg.boundary_field(mesh);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + cfg.out_dir);

  if (log) *log << "solving n=" << cfg.n << " N=" << cfg.N << " p=" << cfg.p << '\n';
  PipelineResult res{{}, {}, {}, minimize(model, g, cfg.solve), {}, {}};
  const SolveReport& sr = res.solve.report;
  const ScalarField& u = res.solve.u;
  Report& rep = res.report;

  rep.add("format", std::string("hessmin-report 1"));
  rep.add("n", static_cast<long long>(cfg.n));
  rep.add("N", static_cast<long long>(cfg.N));
  rep.add("h", mesh->spacing());
  rep.add("p", cfg.p);
  rep.add("weight", cfg.weight.to_string());
  rep.add("delta", cfg.weight.delta());
  rep.add("boundary", cfg.boundary_text);
  rep.add("seed", static_cast<long long>(cfg.solve.seed));
  rep.add("eps_final", sr.eps_final);
  rep.add("final_energy", sr.final_energy);
  rep.add("iterations", static_cast<long long>(sr.total_iterations()));
  rep.add("stages", static_cast<long long>(sr.stages.size()));
  rep.add("grad_norm", sr.final_grad_norm);
  rep.add("stop_reason", sr.stages.empty() ? std::string("none") : std::string(to_string(sr.stages.back().stop)));
  rep.add_flag("max_iter_hit", sr.max_iter_hit);
  if (log) *log << "solved in " << sr.total_iterations() << " iterations, energy " << sr.final_energy << '\n';

  const std::vector<double> radii =
      cfg.radii.empty() ? geometric_radii(0.4, 0.75, 3.0 * mesh->spacing()) : cfg.radii;
  res.profile = decay_profile(u, model, cfg.center, radii);
  rep.add("profile_center", point_text(cfg.center, cfg.n));
  rep.add("profile_radii", static_cast<long long>(radii.size()));
  add_fit(rep, res.profile, cfg.p);

  for (double r : cfg.caccioppoli_radii) {
    if (!cfg.caccioppoli_explicit && !mesh->inside_interior_zone(cfg.center, 2.0 * r)) continue;
    const std::string key = radius_key("caccioppoli_normalized_R", r);
    try {
      rep.add(key, caccioppoli_ratio(u, model, cfg.center, r, true));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateDenominator) throw;
      rep.add(key, std::string(to_string(e.kind())));
    }
  }

  const VectorField du = gradient(u);
  PairSampling sampling = PairSampling::automatic(cfg.solve.seed);
  sampling.count = cfg.holder_pairs;
  for (double a : cfg.holder_alphas) {
    const HolderReport hr = holder_seminorm(du, a, cfg.holder_radius, sampling);
    rep.add(radius_key("holder_Du_alpha", a), hr.seminorm);
    rep.add(radius_key("holder_pairs_alpha", a), static_cast<long long>(hr.pairs));
  }
  rep.add("holder_region_radius", cfg.holder_radius);

  if (cfg.uniqueness > 0) {
    if (log) *log << "uniqueness check over " << cfg.uniqueness << " starts\n";
    rep.add("uniqueness_starts", static_cast<long long>(cfg.uniqueness));
    rep.add("uniqueness_sup_difference", uniqueness_check(model, g, cfg.solve, cfg.uniqueness));
  }
  rep.add("wall_seconds", sr.wall_seconds);

  const std::filesystem::path out(cfg.out_dir);
  res.field_path = out / "field.txt";
  res.profile_path = out / "profile.csv";
  res.report_path = out / "report.txt";
  write_field(u, res.field_path);
  write_profile_csv(res.profile, res.profile_path);
  write_text_atomic(res.report_path, rep.str());
  return res;
}

Report run_diagnose(const DiagnoseRequest& req) {
  const ScalarField u = read_field(req.field);
  const Mesh& mesh = u.mesh();
  const double p = req.p > 0.0 ? req.p : static_cast<double>(mesh.dim());
  const EnergyModel model = EnergyModel::uniform(u.mesh_ptr(), p);
  const std::vector<double> radii = radius_ladder(req.r_min, req.r_max, req.levels);
  const DecayProfile profile = decay_profile(u, model, req.center, radii);

  Report rep;
  rep.add("format", std::string("hessmin-diagnose 1"));
  rep.add("field", req.field.string());
  rep.add("n", static_cast<long long>(mesh.dim()));
  rep.add("N", static_cast<long long>(mesh.nodes_per_axis()));
  rep.add("p", p);
  rep.add("profile_center", point_text(req.center, mesh.dim()));
  rep.add("profile_radii", static_cast<long long>(radii.size()));
  add_fit(rep, profile, p);

  std::error_code ec;
  std::filesystem::create_directories(req.out_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + req.out_dir.string());
  write_profile_csv(profile, req.out_dir / "profile.csv");
  write_text_atomic(req.out_dir / "report.txt", rep.str());
  return rep;
}

void add_verdict(Report& report, const std::string& prefix, const LemmaVerdict& v) {
  report.add_flag(prefix + "hypothesis_ok", v.hypothesis_ok);
  report.add_flag(prefix + "conclusion_ok", v.conclusion_ok);
  report.add(prefix + "min_c4", v.min_c4);
  report.add(prefix + "pairs_checked", static_cast<long long>(v.pairs_checked));
  std::string pairs;
  for (const auto& [i, j] : v.hypothesis_violations) {
    if (!pairs.empty()) pairs += ' ';
    pairs += std::to_string(i) + '-' + std::to_string(j);
  }
  report.add(prefix + "hypothesis_violations", pairs.empty() ? std::string("none") : pairs);
  std::string idx;
  for (std::size_t j : v.conclusion_violations) {
    if (!idx.empty()) idx += ' ';
    idx += std::to_string(j);
  }
  report.add(prefix + "conclusion_violations", idx.empty() ? std::string("none") : idx);
}

Report run_lemmas(const DecayProfile& profile, const LemmaParams& params, double mu_interp) {
  Report rep;
  rep.add("format", std::string("hessmin-lemmas 1"));
  rep.add("samples", static_cast<long long>(profile.radii.size()));
  add_verdict(rep, "lemma_a_", check_lemma_a(profile.radii, profile.phi, params));
  try {
    const LemmaVerdict b = check_lemma_b(profile.radii, profile.phi, profile.sigma, params, mu_interp);
    add_verdict(rep, "lemma_b_", b);
    rep.add("lemma_b_gamma_emp", b.gamma_emp);
    rep.add("lemma_b_match_tol", b.match_tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoMatchingPairs) throw;
    rep.add("lemma_b", std::string(to_string(e.kind())));
  }
  return rep;
}

}  // namespace hessmin
