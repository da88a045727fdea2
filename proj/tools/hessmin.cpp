// hessmin command-line front end: solve, diagnose, oracle, lemmas, selftest.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hessmin/config.hpp"
#include "hessmin/error.hpp"
#include "hessmin/field_io.hpp"
#include "hessmin/lemmas.hpp"
#include "hessmin/pipeline.hpp"
#include "hessmin/solver.hpp"
#include "selftest.hpp"

namespace {

using namespace hessmin;

hessmin::Point parse_point(const std::string& text) {
  Point x{0.0, 0.0, 0.0};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw Error(ErrorKind::InvalidArg, "center takes at most 3 coordinates");
    try {
      x[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArg, "malformed center coordinate '" + item + "'");
    }
  }
  if (i < 2) throw Error(ErrorKind::InvalidArg, "center needs at least 2 coordinates");
  return x;
}

int cmd_solve(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_config(config);
  if (!out.empty()) cfg.out_dir = out;
  if (seed) cfg.override_seed(*seed);
  const PipelineResult res = run_pipeline(cfg, &std::cerr);
  std::cout << res.report.str();
  return kExitOk;
}

int cmd_oracle(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_config(config);
  if (seed) cfg.override_seed(*seed);
  if (cfg.p != 2.0) throw Error(ErrorKind::ValidationError, "p: the linear oracle needs p = 2");
  const auto mesh = cfg.make_mesh();
  const EnergyModel model = cfg.make_model(mesh);
  const ScalarField g = cfg.boundary_field(mesh);
  const ScalarField exact = solve_linear_oracle(model, g);
  const SolveResult descent = minimize(model, g, cfg.solve);
  Report rep;
  rep.add("format", std::string("hessmin-oracle 1"));
  rep.add("unknowns", static_cast<long long>(mesh->interior_nodes().size()));
  rep.add("oracle_energy", energy(model, exact));
  rep.add("descent_energy", descent.report.final_energy);
  rep.add("descent_iterations", static_cast<long long>(descent.report.total_iterations()));
  rep.add("sup_difference", sup_difference(exact, descent.u));
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    write_field(exact, std::filesystem::path(out) / "oracle_field.txt");
    write_text_atomic(std::filesystem::path(out) / "oracle_report.txt", rep.str());
  }
  std::cout << rep.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hessian-energy minimizer and regularity diagnostics"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Override every random seed");

  std::string config;
  std::string out;
  auto* solve = app.add_subcommand("solve", "Minimize, diagnose and write field/profile/report");
  solve->add_option("--config", config, "Run configuration (key = value)")->required();
  solve->add_option("--out", out, "Output directory (overrides out_dir)");

  DiagnoseRequest diag;
  std::string center = "0,0";
  std::string field;
  std::string diag_out = "out";
  auto* diagnose = app.add_subcommand("diagnose", "Decay profile and exponent fit of a stored field");
  diagnose->add_option("--field", field, "Field file")->required();
  diagnose->add_option("--center", center, "Ball center x,y[,z]");
  diagnose->add_option("--rmin", diag.r_min, "Smallest radius")->required();
  diagnose->add_option("--rmax", diag.r_max, "Largest radius")->required();
  diagnose->add_option("--levels", diag.levels, "Number of radii")->required();
  diagnose->add_option("--p", diag.p, "Integrability exponent (default n)");
  diagnose->add_option("--out", diag_out, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Compare descent with the dense linear solve (p = 2)");
  oracle->add_option("--config", config, "Run configuration")->required();
  oracle->add_option("--out", out, "Optional output directory for the oracle field");

  LemmaParams lp;
  std::string profile_path;
  std::string lemma_out;
  double mu_interp = 0.5;
  auto* lemmas = app.add_subcommand("lemmas", "Check both iteration lemmas on a profile CSV");
  lemmas->add_option("--profile", profile_path, "Profile CSV (r,phi,sigma)")->required();
  lemmas->add_option("--c1", lp.c1);
  lemmas->add_option("--alpha", lp.alpha);
  lemmas->add_option("--beta", lp.beta);
  lemmas->add_option("--mu", lp.mu);
  lemmas->add_option("--c2", lp.c2);
  lemmas->add_option("--sigma", lp.sigma_exp, "Target exponent of the power-law conclusion");
  lemmas->add_option("--c4", lp.c4, "Constant tested by the conclusion");
  lemmas->add_option("--gamma", lp.gamma);
  lemmas->add_option("--tau", lp.tau);
  lemmas->add_option("--decay", lp.decay, "Exponent a of the second lemma's conclusion");
  lemmas->add_option("--mu-interp", mu_interp, "Interpolation exponent in (0,1)");
  lemmas->add_option("--match-tol", lp.match_tol, "Tolerance for matching tau R to a sample");
  lemmas->add_option("--out", lemma_out, "Directory for verdict.txt");

  int cases = 25;
  auto* selftest = app.add_subcommand("selftest", "Run the randomized property suite");
  selftest->add_option("--cases", cases, "Cases per property");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(config, out, seed);
    if (*oracle) return cmd_oracle(config, out, seed);
    if (*diagnose) {
      diag.field = field;
      diag.center = parse_point(center);
      diag.out_dir = diag_out;
      std::cout << run_diagnose(diag).str();
      return kExitOk;
    }
    if (*lemmas) {
      const Report rep = run_lemmas(read_profile_csv(profile_path), lp, mu_interp);
      if (!lemma_out.empty()) {
        std::filesystem::create_directories(lemma_out);
        write_text_atomic(std::filesystem::path(lemma_out) / "verdict.txt", rep.str());
      }
      std::cout << rep.str();
      return kExitOk;
    }
    if (*selftest) return tool::run_selftest(seed.value_or(0), cases, std::cout) == 0 ? kExitOk : 1;
  } catch (const Error& e) {
    std::cerr << "hessmin: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "hessmin: IoError: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
