#include "hessmin/polynomial.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hessmin/error.hpp"

namespace hessmin {

namespace {

double ipow(double x, int k) noexcept {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_term(std::string_view term) {
  throw Error(ErrorKind::ParseError, "malformed polynomial term '" + std::string(term) + "'");
}

int parse_int(std::string_view s, std::string_view term) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_term(term);
  return v;
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    for (int e : t.exps) {
      if (e < 0) throw Error(ErrorKind::InvalidArg, "negative monomial exponent");
    }
    if (t.degree() > kMaxDegree) {
      throw Error(ErrorKind::InvalidArg, "monomial degree " + std::to_string(t.degree()) + " exceeds 4");
    }
    if (!std::isfinite(t.coef)) throw Error(ErrorKind::InvalidArg, "non-finite polynomial coefficient");
  }
}

Polynomial Polynomial::preset(std::string_view name, int dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorKind::InvalidArg, "preset dimension must be 2 or 3");
  if (name == "affine") {
    std::vector<Monomial> t{{0.5, {0, 0, 0}}, {1.0, {1, 0, 0}}, {-0.5, {0, 1, 0}}};
    if (dim == 3) t.push_back({0.25, {0, 0, 1}});
    return Polynomial(std::move(t));
  }
  if (name == "saddle") return Polynomial(std::vector<Monomial>{{0.5, {2, 0, 0}}, {-0.5, {0, 2, 0}}});
  if (name == "cubic") return Polynomial(std::vector<Monomial>{{1.0, {3, 0, 0}}});
  if (name == "paraboloid") {
    std::vector<Monomial> t;
    for (int i = 0; i < dim; ++i) {
      Monomial m{0.5, {0, 0, 0}};
      m.exps[static_cast<std::size_t>(i)] = 2;
      t.push_back(m);
    }
    return Polynomial(std::move(t));
  }
  if (name == "radial-quartic") {
    // (sum x_i^2)^2 = sum x_i^4 + 2 sum_{i<j} x_i^2 x_j^2
    std::vector<Monomial> t;
    for (int i = 0; i < dim; ++i) {
      Monomial m{1.0, {0, 0, 0}};
      m.exps[static_cast<std::size_t>(i)] = 4;
      t.push_back(m);
      for (int j = i + 1; j < dim; ++j) {
        Monomial c{2.0, {0, 0, 0}};
        c.exps[static_cast<std::size_t>(i)] = 2;
        c.exps[static_cast<std::size_t>(j)] = 2;
        t.push_back(c);
      }
    }
    return Polynomial(std::move(t));
  }
  throw Error(ErrorKind::InvalidArg, "unknown boundary preset '" + std::string(name) + "'");
}

Polynomial Polynomial::parse(std::string_view text) {
  std::vector<Monomial> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = std::min(text.find(';', pos), text.size());
    const std::string_view term = trim(text.substr(pos, semi - pos));
    pos = semi + 1;
    if (term.empty()) bad_term(term);
    Monomial m;
    std::size_t star = std::min(term.find('*'), term.size());
    const std::string_view coef = trim(term.substr(0, star));
    const char* first = coef.data();
    if (!coef.empty() && coef.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, coef.data() + coef.size(), m.coef);
    if (ec != std::errc() || ptr != coef.data() + coef.size()) bad_term(term);
    while (star < term.size()) {
      const std::size_t next = std::min(term.find('*', star + 1), term.size());
      std::string_view factor = trim(term.substr(star + 1, next - star - 1));
      star = next;
      if (factor.size() < 2 || factor[0] != 'x') bad_term(term);
      const std::size_t caret = factor.find('^');
      const int var = parse_int(factor.substr(1, caret == std::string_view::npos ? factor.size() - 1 : caret - 1), term);
      const int exp = caret == std::string_view::npos ? 1 : parse_int(factor.substr(caret + 1), term);
      if (var < 1 || var > 3 || exp < 0) bad_term(term);
      m.exps[static_cast<std::size_t>(var - 1)] += exp;
    }
    if (m.degree() > kMaxDegree) {
      throw Error(ErrorKind::ParseError, "term '" + std::string(term) + "' exceeds total degree 4");
    }
    terms.push_back(m);
    if (semi == text.size()) break;
  }
  return Polynomial(std::move(terms));
}

double Polynomial::operator()(const Point& x) const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coef * ipow(x[0], t.exps[0]) * ipow(x[1], t.exps[1]) * ipow(x[2], t.exps[2]);
  return s;
}

Point Polynomial::gradient(const Point& x) const noexcept {
  Point g{0.0, 0.0, 0.0};
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (t.exps[i] == 0) continue;
      double v = t.coef * t.exps[i];
      for (std::size_t k = 0; k < 3; ++k) v *= ipow(x[k], k == i ? t.exps[k] - 1 : t.exps[k]);
      g[i] += v;
    }
  }
  return g;
}

double Polynomial::hessian(const Point& x, int i, int j) const noexcept {
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  double s = 0.0;
  for (const auto& t : terms_) {
    std::array<int, 3> e = t.exps;
    double v = t.coef * e[a];
    --e[a];
    v *= e[b];
    --e[b];
    if (v == 0.0) continue;
    for (std::size_t k = 0; k < 3; ++k) v *= ipow(x[k], e[k]);
    s += v;
  }
  return s;
}

int Polynomial::degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

int Polynomial::variables() const noexcept {
  int v = 0;
  for (const auto& t : terms_) {
    for (int i = 0; i < 3; ++i) {
      if (t.exps[static_cast<std::size_t>(i)] > 0) v = std::max(v, i + 1);
    }
  }
  return v;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k > 0) os << "; ";
    os << terms_[k].coef;
    for (int i = 0; i < 3; ++i) {
      const int e = terms_[k].exps[static_cast<std::size_t>(i)];
      if (e == 1) os << "*x" << i + 1;
      if (e > 1) os << "*x" << i + 1 << '^' << e;
    }
  }
  return os.str();
}

ScalarField Polynomial::sample(std::shared_ptr<const Mesh> mesh) const {
  return ScalarField::sample(std::move(mesh), [this](const Point& x) { return (*this)(x); });
}

std::vector<std::string_view> preset_names() { return {"affine", "saddle", "cubic", "radial-quartic", "paraboloid"}; }

}  // namespace hessmin
