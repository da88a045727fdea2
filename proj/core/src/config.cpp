#include "hessmin/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hessmin/error.hpp"

namespace hessmin {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::string_view key, const std::string& msg) {
  throw Error(ErrorKind::ParseError, std::string(key) + ": " + msg);
}

[[noreturn]] void invalid(std::string_view key, const std::string& msg) {
  throw Error(ErrorKind::ValidationError, std::string(key) + ": " + msg);
}

double to_double(std::string_view key, std::string_view s) {
  s = trim(s);
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    parse_error(key, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t to_int(std::string_view key, std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    parse_error(key, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view key, std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    out.push_back(to_double(key, s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

bool strictly_increasing_positive(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || (i > 0 && !(v[i] > v[i - 1]))) return false;
  }
  return true;
}

const std::vector<std::string_view> kKeys{
    "n",           "N",         "p",          "boundary",          "eps_schedule",  "weight",
    "seed",        "init",      "direction",  "preconditioner", "tol_grad",          "tol_energy",    "max_iter",
    "history",     "out_dir",   "radii",      "center",            "caccioppoli_radii",
    "holder_alphas", "holder_radius", "holder_pairs", "uniqueness"};

}  // namespace

double WeightSpec::delta() const noexcept { return std::min(c0, c0 + c1); }

ScalarField WeightSpec::sample(std::shared_ptr<const Mesh> mesh) const {
  return ScalarField::sample(std::move(mesh), [this](const Point& x) {
    return c0 + c1 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  });
}

std::string WeightSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  if (radial) {
    os << "radial:" << c0 << ',' << c1;
  } else {
    os << c0;
  }
  return os.str();
}

std::shared_ptr<const Mesh> RunConfig::make_mesh() const { return Mesh::build(n, N); }

EnergyModel RunConfig::make_model(std::shared_ptr<const Mesh> mesh) const {
  if (!weight.radial && weight.c0 == 1.0) return EnergyModel::uniform(std::move(mesh), p, 0.0);
  return EnergyModel(p, 0.0, weight.sample(std::move(mesh)), weight.delta());
}

ScalarField RunConfig::boundary_field(std::shared_ptr<const Mesh> mesh) const {
  return boundary.sample(std::move(mesh));
}

std::vector<std::string_view> config_keys() { return kKeys; }

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) parse_error(key, "unknown key");
    if (!kv.emplace(std::string(key), std::string(value)).second) parse_error(key, "duplicate key");
  }
  for (const char* req : {"n", "N", "p", "boundary"}) {
    if (!kv.count(req)) invalid(req, "required key missing");
  }

  RunConfig cfg;
  cfg.n = static_cast<int>(to_int("n", kv.at("n")));
  if (cfg.n != 2 && cfg.n != 3) invalid("n", "dimension must be 2 or 3");
  const std::int64_t big_n = to_int("N", kv.at("N"));
  if (big_n < 9 || big_n % 2 == 0 || big_n > 100001) invalid("N", "nodes per axis must be odd and >= 9");
  cfg.N = static_cast<int>(big_n);
  cfg.p = to_double("p", kv.at("p"));
  if (!(cfg.p >= 2.0) || !std::isfinite(cfg.p)) invalid("p", "exponent must be >= 2");

  const std::string& b = kv.at("boundary");
  cfg.boundary_text = b;
  try {
    cfg.boundary = b.rfind("poly:", 0) == 0 ? Polynomial::parse(std::string_view(b).substr(5))
                                            : Polynomial::preset(b, cfg.n);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) parse_error("boundary", e.what());
    invalid("boundary", e.what());
  }
  if (cfg.boundary.variables() > cfg.n) invalid("boundary", "polynomial uses more variables than n");

  if (cfg.p == 2.0) cfg.solve.eps_schedule = {0.0};
  if (auto it = kv.find("eps_schedule"); it != kv.end()) cfg.solve.eps_schedule = to_list("eps_schedule", it->second);

  if (auto it = kv.find("weight"); it != kv.end()) {
    std::string_view w = it->second;
    if (w.rfind("radial:", 0) == 0) {
      const auto c = to_list("weight", w.substr(7));
      if (c.size() != 2) parse_error("weight", "radial weight takes two coefficients c0,c1");
      cfg.weight = {c[0], c[1], true};
    } else {
      cfg.weight = {to_double("weight", w), 0.0, false};
    }
    if (!(cfg.weight.delta() > 0.0) || !std::isfinite(cfg.weight.c0) || !std::isfinite(cfg.weight.c1)) {
      invalid("weight", "weight must stay positive on the unit ball");
    }
  }

  if (auto it = kv.find("seed"); it != kv.end()) {
    const auto s = to_int("seed", it->second);
    if (s < 0) invalid("seed", "seed must be nonnegative");
    cfg.solve.seed = static_cast<std::uint64_t>(s);
  }
  if (auto it = kv.find("init"); it != kv.end()) {
    const std::string& v = it->second;
    if (v == "zero") {
      cfg.solve.init = InitKind::Zero;
    } else if (v == "extension") {
      cfg.solve.init = InitKind::BoundaryExtension;
    } else if (v == "random") {
      cfg.solve.init = InitKind::SeededRandom;
    } else {
      invalid("init", "expected zero, extension or random");
    }
  }
  if (auto it = kv.find("direction"); it != kv.end()) {
    if (it->second == "lbfgs") {
      cfg.solve.direction = DescentDirection::Lbfgs;
    } else if (it->second == "steepest") {
      cfg.solve.direction = DescentDirection::Steepest;
    } else {
      invalid("direction", "expected lbfgs or steepest");
    }
  }
  if (auto it = kv.find("preconditioner"); it != kv.end()) {
    if (it->second == "biharmonic") {
      cfg.solve.preconditioner = Preconditioner::Biharmonic;
    } else if (it->second == "none") {
      cfg.solve.preconditioner = Preconditioner::None;
    } else if (it->second == "auto") {
      cfg.solve.preconditioner = Preconditioner::Auto;
    } else {
      invalid("preconditioner", "expected auto, biharmonic or none");
    }
  }
  if (auto it = kv.find("tol_grad"); it != kv.end()) cfg.solve.tol_grad = to_double("tol_grad", it->second);
  if (auto it = kv.find("tol_energy"); it != kv.end()) cfg.solve.tol_energy = to_double("tol_energy", it->second);
  if (auto it = kv.find("max_iter"); it != kv.end()) {
    cfg.solve.max_iter = static_cast<int>(std::clamp<std::int64_t>(to_int("max_iter", it->second), -1, 1'000'000'000));
  }
  if (auto it = kv.find("history"); it != kv.end()) {
    cfg.solve.history = static_cast<int>(std::clamp<std::int64_t>(to_int("history", it->second), -1, 1000));
  }
  try {
    cfg.solve.validate(cfg.p);
  } catch (const Error& e) {
    const std::string msg = e.what();
    for (const char* key : {"eps_schedule", "tol_grad", "tol_energy", "max_iter", "history"}) {
      if (msg.find(key) != std::string::npos) invalid(key, msg);
    }
    invalid("solver", msg);
  }

  if (auto it = kv.find("out_dir"); it != kv.end()) {
    if (it->second.empty()) invalid("out_dir", "empty path");
    cfg.out_dir = it->second;
  }

  const double h = 2.0 / (cfg.N - 1);
  const double zone = 1.0 - 2.0 * h;
  if (auto it = kv.find("center"); it != kv.end()) {
    const auto c = to_list("center", it->second);
    if (static_cast<int>(c.size()) != cfg.n) invalid("center", "expected " + std::to_string(cfg.n) + " coordinates");
    for (std::size_t i = 0; i < c.size(); ++i) cfg.center[i] = c[i];
  }
  if (auto it = kv.find("radii"); it != kv.end() && it->second != "auto") {
    cfg.radii = to_list("radii", it->second);
    if (!strictly_increasing_positive(cfg.radii)) invalid("radii", "radii must be positive and strictly increasing");
    if (cfg.radii.front() < 3.0 * h * (1.0 - 1e-12)) invalid("radii", "smallest radius is below 3h");
    if (norm(cfg.center) + cfg.radii.back() > zone * (1.0 + 1e-12)) invalid("radii", "largest ball leaves the interior zone");
  } else if (norm(cfg.center) + 0.4 > zone * (1.0 + 1e-12)) {
    invalid("center", "default radius ladder leaves the interior zone around this center");
  }
  if (auto it = kv.find("caccioppoli_radii"); it != kv.end()) {
    cfg.caccioppoli_radii = to_list("caccioppoli_radii", it->second);
    cfg.caccioppoli_explicit = true;
    if (!strictly_increasing_positive(cfg.caccioppoli_radii)) {
      invalid("caccioppoli_radii", "radii must be positive and strictly increasing");
    }
    if (norm(cfg.center) + 2.0 * cfg.caccioppoli_radii.back() > zone * (1.0 + 1e-12)) {
      invalid("caccioppoli_radii", "doubled ball leaves the interior zone");
    }
  }
  if (auto it = kv.find("holder_alphas"); it != kv.end()) {
    cfg.holder_alphas = to_list("holder_alphas", it->second);
    for (double a : cfg.holder_alphas) {
      if (!(a > 0.0 && a <= 1.0)) invalid("holder_alphas", "exponents must lie in (0,1]");
    }
  }
  if (auto it = kv.find("holder_radius"); it != kv.end()) {
    cfg.holder_radius = to_double("holder_radius", it->second);
  }
  if (!(cfg.holder_radius > 0.0) || cfg.holder_radius > zone * (1.0 + 1e-12)) {
    invalid("holder_radius", "region must be a ball inside the interior zone");
  }
  if (auto it = kv.find("holder_pairs"); it != kv.end()) {
    const auto c = to_int("holder_pairs", it->second);
    if (c <= 0) invalid("holder_pairs", "pair count must be positive");
    cfg.holder_pairs = static_cast<std::uint64_t>(c);
  }
  if (auto it = kv.find("uniqueness"); it != kv.end()) {
    const auto k = to_int("uniqueness", it->second);
    if (k != 0 && (k < 2 || k > 64)) invalid("uniqueness", "start count must be 0 or between 2 and 64");
    cfg.uniqueness = static_cast<int>(k);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "read failed on " + path.string());
  return parse_config(buf.str());
}

}  // namespace hessmin
