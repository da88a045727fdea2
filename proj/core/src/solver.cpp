#include "hessmin/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <memory>
#include <limits>
#include <random>
#include <string>

#include "hessmin/error.hpp"
#include "preconditioner.hpp"

namespace hessmin {

std::string_view to_string(InitKind kind) noexcept {
  switch (kind) {
    case InitKind::Zero: return "zero";
    case InitKind::BoundaryExtension: return "boundary-extension";
    case InitKind::SeededRandom: return "seeded-random";
  }
  return "unknown";
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::GradientTolerance: return "gradient-tolerance";
    case StopReason::EnergyStagnation: return "energy-stagnation";
    case StopReason::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

std::string_view to_string(Preconditioner kind) noexcept {
  switch (kind) {
    case Preconditioner::None: return "none";
    case Preconditioner::Biharmonic: return "biharmonic";
    case Preconditioner::Auto: return "auto";
  }
  return "unknown";
}

void SolveConfig::validate(double p) const {
  if (!(tol_grad > 0.0)) throw Error(ErrorKind::InvalidArg, "tol_grad must be > 0");
  if (!(tol_energy > 0.0)) throw Error(ErrorKind::InvalidArg, "tol_energy must be > 0");
  if (max_iter < 1) throw Error(ErrorKind::InvalidArg, "max_iter must be >= 1");
  if (stagnation_window < 1) throw Error(ErrorKind::InvalidArg, "stagnation_window must be >= 1");
  if (history < 1) throw Error(ErrorKind::InvalidArg, "history must be >= 1");
  if (!(armijo > 0.0 && armijo < 1.0)) throw Error(ErrorKind::InvalidArg, "armijo must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    throw Error(ErrorKind::InvalidArg, "backtrack must lie in (0,1)");
  }
  if (p == 2.0) return;
  if (eps_schedule.empty()) throw Error(ErrorKind::InvalidArg, "eps_schedule is empty");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] >= 0.0)) throw Error(ErrorKind::InvalidArg, "eps_schedule entries must be >= 0");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])) {
      throw Error(ErrorKind::InvalidArg, "eps_schedule must be strictly decreasing");
    }
  }
  if (eps_schedule.back() == 0.0) {
    throw Error(ErrorKind::InvalidArg, "eps_schedule may end at 0 only when p = 2");
  }
}

int SolveReport::total_iterations() const noexcept {
  int n = 0;
  for (const StageReport& s : stages) n += s.iterations;
  return n;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t nearest_band_node(const Mesh& mesh, std::size_t node) {
  const Point x = mesh.position(node);
  double r = norm(x);
  Point dir{1.0, 0.0, 0.0};
  if (r > 0.0) dir = {x[0] / r, x[1] / r, x[2] / r};
  const double target = 1.0 - mesh.spacing();
  GridIndex centre{0, 0, 0};
  for (int a = 0; a < mesh.dim(); ++a) {
    centre[static_cast<std::size_t>(a)] =
        static_cast<int>(std::lround(dir[static_cast<std::size_t>(a)] * target * mesh.half_width()));
  }
  std::size_t best = mesh.node_count();
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t cand) {
    const Point y = mesh.position(cand);
    double d2 = 0.0;
    for (int a = 0; a < mesh.dim(); ++a) {
      const double d = y[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(a)];
      d2 += d * d;
    }
    if (d2 < best_d2 || (d2 == best_d2 && cand < best)) {
      best_d2 = d2;
      best = cand;
    }
  };
  const int reach = 3;
  const int m = mesh.half_width();
  GridIndex k{0, 0, 0};
  const int zlo = mesh.dim() == 3 ? -reach : 0;
  const int zhi = mesh.dim() == 3 ? reach : 0;
  for (int dx = -reach; dx <= reach; ++dx) {
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dz = zlo; dz <= zhi; ++dz) {
        k = {centre[0] + dx, centre[1] + dy, centre[2] + dz};
        bool on_grid = true;
        for (int a = 0; a < mesh.dim(); ++a) {
          on_grid = on_grid && std::abs(k[static_cast<std::size_t>(a)]) <= m;
        }
        if (!on_grid) continue;
        const std::size_t cand = mesh.node_at(k);
        if (mesh.node_class(cand) == NodeClass::Band) consider(cand);
      }
    }
  }
  if (best == mesh.node_count()) {
    for (std::size_t cand : mesh.band_nodes()) consider(cand);
  }
  return best;
}

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Two-loop recursion: d = -H g with H0 = gamma P, P the preconditioner (or I)
// and gamma = s'y / y'Py from the newest pair.
void lbfgs_direction(const std::deque<Pair>& memory, const detail::BiharmonicPreconditioner* pre,
                     std::span<const double> g, std::span<double> d) {
  std::copy(g.begin(), g.end(), d.begin());
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * dot(memory[k].s, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[k] * memory[k].y[i];
  }
  const Pair& last = memory.back();
  if (pre) {
    std::vector<double> py(d.size());
    pre->apply(last.y, py);
    const double gamma = dot(last.s, last.y) / dot(last.y, py);
    std::vector<double> pd(d.size());
    pre->apply(d, pd);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = gamma * pd[i];
  } else {
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : d) v *= gamma;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double beta = memory[k].rho * dot(memory[k].y, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += (alpha[k] - beta) * memory[k].s[i];
  }
  for (double& v : d) v = -v;
}

class StageRunner {
 public:
  StageRunner(const EnergyModel& model, const SolveConfig& cfg, const detail::BiharmonicPreconditioner* pre,
              std::vector<double>& u)
      : model_(model),
        cfg_(cfg),
        pre_(pre),
        mesh_(model.mesh()),
        eval_(model),
        u_(u),
        interior_(mesh_.interior_nodes()),
        grad_full_(u.size(), 0.0),
        dir_full_(u.size(), 0.0),
        g_(interior_.size()),
        d_(interior_.size()) {}

  StageReport run() {
    StageReport rep;
    rep.eps = model_.eps();
    double e = refresh_gradient();
    rep.energies.push_back(e);
    double step_hint = 0.0;  // BB1 step for steepest descent

    for (int iter = 0; iter < cfg_.max_iter; ++iter) {
      rep.grad_norm = sup_norm(g_);
      if (rep.grad_norm <= cfg_.tol_grad) {
        rep.stop = StopReason::GradientTolerance;
        return rep;
      }
      if (stagnated(rep.energies)) {
        rep.stop = StopReason::EnergyStagnation;
        return rep;
      }

      double t0 = choose_direction(step_hint);
      double t = 0.0;
      double de = 0.0;
      if (!line_search(t0, t, de)) {
        // Retry once along the scaled negative gradient before giving up.
        memory_.clear();
        t0 = choose_direction(0.0);
        if (!line_search(t0, t, de)) {
          throw Error(ErrorKind::LineSearchStall,
                      "no decreasing step at eps = " + std::to_string(model_.eps()) +
                          ", gradient sup-norm " + std::to_string(rep.grad_norm));
        }
      }

      std::vector<double> s(interior_.size());
      for (std::size_t i = 0; i < interior_.size(); ++i) {
        s[i] = t * d_[i];
        u_[interior_[i]] += s[i];
      }
      std::vector<double> g_old = g_;
      refresh_gradient();
      e += de;
      rep.energies.push_back(e);
      ++rep.iterations;

      std::vector<double> y(interior_.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = g_[i] - g_old[i];
      const double sy = dot(s, y);
      const double ss = dot(s, s);
      const double yy = dot(y, y);
      step_hint = 0.0;
      if (sy > 1e-12 * std::sqrt(ss * yy) && std::isfinite(sy)) {
        step_hint = ss / sy;
        memory_.push_back(Pair{std::move(s), std::move(y), 1.0 / sy});
        if (memory_.size() > static_cast<std::size_t>(cfg_.history)) memory_.pop_front();
      }
    }
    rep.grad_norm = sup_norm(g_);
    rep.stop = rep.grad_norm <= cfg_.tol_grad ? StopReason::GradientTolerance : StopReason::MaxIterations;
    return rep;
  }

  double gradient_norm() const { return sup_norm(g_); }

 private:
  double refresh_gradient() {
    const double e = eval_.value_and_gradient(u_, grad_full_);
    for (std::size_t i = 0; i < interior_.size(); ++i) g_[i] = grad_full_[interior_[i]];
    return e;
  }

  // Fills d_ and returns the first trial step.
  double choose_direction(double step_hint) {
    if (cfg_.direction == DescentDirection::Lbfgs && !memory_.empty()) {
      lbfgs_direction(memory_, pre_, g_, d_);
      if (dot(g_, d_) < 0.0) return 1.0;
      memory_.clear();
    }
    if (pre_) {
      // Newton step of the p = 2 model.
      pre_->apply(g_, d_);
      for (double& v : d_) v = -v;
      if (dot(g_, d_) < 0.0) return 1.0;
    }
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] = -g_[i];
    if (step_hint > 0.0) return step_hint;
    // Unit Euclidean move in node values.
    return 1.0 / std::sqrt(dot(g_, g_));
  }

  bool line_search(double t0, double& t, double& de) {
    std::fill(dir_full_.begin(), dir_full_.end(), 0.0);
    for (std::size_t i = 0; i < interior_.size(); ++i) dir_full_[interior_[i]] = d_[i];
    eval_.set_direction(dir_full_);
    const double slope = dot(g_, d_);
    if (!(slope < 0.0)) return false;
    t = t0;
    for (int b = 0; b <= cfg_.max_backtracks; ++b) {
      de = eval_.change(t);
      if (de < 0.0 && de <= cfg_.armijo * t * slope) return true;
      t *= cfg_.backtrack;
    }
    return false;
  }

  bool stagnated(const std::vector<double>& energies) const {
    const auto w = static_cast<std::size_t>(cfg_.stagnation_window);
    if (energies.size() <= w) return false;
    const double now = energies.back();
    const double before = energies[energies.size() - 1 - w];
    const double scale = std::max(std::abs(now), std::numeric_limits<double>::min());
    return (before - now) < cfg_.tol_energy * scale;
  }

  const EnergyModel& model_;
  const SolveConfig& cfg_;
  const detail::BiharmonicPreconditioner* pre_;
  const Mesh& mesh_;
  EnergyEvaluator eval_;
  std::vector<double>& u_;
  std::span<const std::size_t> interior_;
  std::vector<double> grad_full_;
  std::vector<double> dir_full_;
  std::vector<double> g_;
  std::vector<double> d_;
  std::deque<Pair> memory_;
};

}  // namespace

ScalarField initial_guess(const ScalarField& g, InitKind kind, std::uint64_t seed) {
  const Mesh& mesh = g.mesh();
  ScalarField u = g;
  switch (kind) {
    case InitKind::Zero:
      for (std::size_t node : mesh.interior_nodes()) u[node] = 0.0;
      break;
    case InitKind::BoundaryExtension:
      for (std::size_t node : mesh.interior_nodes()) u[node] = g[nearest_band_node(mesh, node)];
      break;
    case InitKind::SeededRandom: {
      double scale = 0.0;
      for (std::size_t node : mesh.band_nodes()) scale = std::max(scale, std::abs(g[node]));
      if (scale == 0.0) scale = 1.0;
      std::mt19937_64 rng(seed);
      for (std::size_t node : mesh.interior_nodes()) u[node] = scale * (2.0 * unit_uniform(rng) - 1.0);
      break;
    }
  }
  return u;
}

SolveResult minimize(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg) {
  return minimize_from(model, g, cfg, initial_guess(g, cfg.init, cfg.seed));
}

SolveResult minimize_from(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg,
                          const ScalarField& initial) {
  const auto started = std::chrono::steady_clock::now();
  require_same_mesh(model.mesh(), g.mesh(), "minimize");
  require_same_mesh(model.mesh(), initial.mesh(), "minimize");
  cfg.validate(model.p());
  const Mesh& mesh = model.mesh();
  for (std::size_t node : mesh.band_nodes()) {
    if (!std::isfinite(g[node])) throw Error(ErrorKind::InvalidArg, "boundary data is not finite on the BAND");
  }

  std::vector<double> u(g.values().begin(), g.values().end());
  for (std::size_t node : mesh.interior_nodes()) u[node] = initial[node];

  const std::vector<double> schedule = model.p() == 2.0 ? std::vector<double>{0.0} : cfg.eps_schedule;
  std::unique_ptr<detail::BiharmonicPreconditioner> pre;
  const bool factor = cfg.preconditioner == Preconditioner::Biharmonic ||
                      (cfg.preconditioner == Preconditioner::Auto && model.p() == 2.0 &&
                       (mesh.dim() == 2 || mesh.interior_nodes().size() <= kAutoPreconditionMax3d));
  if (factor && !mesh.interior_nodes().empty()) {
    pre = std::make_unique<detail::BiharmonicPreconditioner>(model);
  }
  SolveReport report;
  double grad_norm = 0.0;
  for (double eps : schedule) {
    const EnergyModel stage_model = model.with_eps(eps);
    StageRunner runner(stage_model, cfg, pre.get(), u);
    StageReport stage = runner.run();
    grad_norm = stage.grad_norm;
    report.max_iter_hit = report.max_iter_hit || stage.stop == StopReason::MaxIterations;
    report.stages.push_back(std::move(stage));
  }
  const EnergyModel final_model = model.with_eps(schedule.back());
  ScalarField out(g.mesh_ptr(), std::move(u));
  report.final_energy = energy(final_model, out);
  report.final_grad_norm = grad_norm;
  report.eps_final = schedule.back();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return SolveResult{std::move(out), std::move(report)};
}

double sup_difference(const ScalarField& a, const ScalarField& b) {
  require_same_mesh(a.mesh(), b.mesh(), "sup_difference");
  double m = 0.0;
  const auto classes = a.mesh().classes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (classes[i] != NodeClass::Exterior) m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double uniqueness_check(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg, int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArg, "uniqueness_check needs k >= 2");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < k; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
  return uniqueness_check(model, g, cfg, seeds);
}

double uniqueness_check(const EnergyModel& model, const ScalarField& g, const SolveConfig& cfg,
                        std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 2) throw Error(ErrorKind::InvalidArg, "uniqueness_check needs at least two seeds");
  std::vector<ScalarField> minimizers;
  for (std::uint64_t seed : seeds) {
    SolveConfig run = cfg;
    run.init = InitKind::SeededRandom;
    run.seed = seed;
    minimizers.push_back(minimize(model, g, run).u);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < minimizers.size(); ++i) {
    for (std::size_t j = i + 1; j < minimizers.size(); ++j) {
      worst = std::max(worst, sup_difference(minimizers[i], minimizers[j]));
    }
  }
  return worst;
}

}  // namespace hessmin
