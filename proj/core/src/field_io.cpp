#include "hessmin/field_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hessmin/error.hpp"

namespace hessmin {

namespace {

constexpr std::string_view kMagic = "HESSMIN-FIELD 1";

char class_token(NodeClass c) {
  switch (c) {
    case NodeClass::Interior:
      return 'I';
    case NodeClass::Band:
      return 'B';
    case NodeClass::Exterior:
      return 'E';
  }
  return '?';
}

[[noreturn]] void format_error(const std::string& msg) { throw Error(ErrorKind::FormatError, msg); }

// Splits into lines (tolerating CRLF) and walks them.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t nl = std::min(text_.find('\n', pos_), text_.size());
    line = text_.substr(pos_, nl - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = nl + 1;
    ++number_;
    return true;
  }
  std::string_view expect(const char* what) {
    std::string_view line;
    if (!next(line)) format_error(std::string("unexpected end of file, expected ") + what);
    return line;
  }
  int number() const noexcept { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int number_ = 0;
};

template <class T>
T header_value(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size() + 1) != std::string(key) + " ") {
    format_error("expected '" + std::string(key) + " <value>', got '" + std::string(line) + "'");
  }
  const std::string_view v = line.substr(key.size() + 1);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) format_error("malformed " + std::string(key) + " value");
  return out;
}

template <class F>
void for_each_token(std::string_view line, F&& f) {
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    f(line.substr(pos, end - pos));
    pos = end;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorKind::IoError, "cannot format value");
  return std::string(buf, ptr);
}

std::string format_g17(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_field(const ScalarField& u) {
  const Mesh& mesh = u.mesh();
  const auto per_line = static_cast<std::size_t>(mesh.nodes_per_axis());
  std::string out;
  out.reserve(u.size() * 24 + 128);
  out += kMagic;
  out += "\nn " + std::to_string(mesh.dim()) + "\nN " + std::to_string(mesh.nodes_per_axis()) + "\nh " +
         format_double(mesh.spacing()) + "\nvalues\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) throw Error(ErrorKind::IoError, "field holds a non-finite value");
    out += format_double(u[i]);
    out += (i + 1) % per_line == 0 ? '\n' : ' ';
  }
  out += "mask\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out += class_token(mesh.node_class(i));
    out += (i + 1) % per_line == 0 ? '\n' : ' ';
  }
  return out;
}

ScalarField parse_field(std::string_view text) {
  LineReader lines(text);
  if (lines.expect("magic line") != kMagic) format_error("bad magic line, expected '" + std::string(kMagic) + "'");
  const int dim = header_value<int>(lines.expect("n"), "n");
  const int big_n = header_value<int>(lines.expect("N"), "N");
  const double h = header_value<double>(lines.expect("h"), "h");
  std::shared_ptr<const Mesh> mesh;
  try {
    mesh = Mesh::build(dim, big_n);
  } catch (const Error& e) {
    format_error(std::string("header describes no valid mesh: ") + e.what());
  }
  if (std::abs(h - mesh->spacing()) > 1e-12 * mesh->spacing()) {
    format_error("h = " + format_double(h) + " does not match N = " + std::to_string(big_n));
  }
  if (lines.expect("values") != "values") format_error("expected 'values' line");

  const std::size_t expected = mesh->node_count();
  std::vector<double> values;
  values.reserve(expected);
  std::string_view line;
  bool saw_mask = false;
  while (lines.next(line)) {
    if (line == "mask") {
      saw_mask = true;
      break;
    }
    for_each_token(line, [&](std::string_view tok) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        format_error("malformed value '" + std::string(tok) + "' on line " + std::to_string(lines.number()));
      }
      values.push_back(v);
    });
  }
  if (values.size() != expected) {
    format_error("value count " + std::to_string(values.size()) + " does not match N^n = " + std::to_string(expected));
  }
  if (!saw_mask) format_error("missing 'mask' section");
  std::size_t k = 0;
  while (lines.next(line)) {
    for_each_token(line, [&](std::string_view tok) {
      if (tok.size() != 1 || k >= expected || tok[0] != class_token(mesh->node_class(k))) {
        format_error("mask token " + std::to_string(k) + " disagrees with the mesh classification");
      }
      ++k;
    });
  }
  if (k != expected) {
    format_error("mask count " + std::to_string(k) + " does not match N^n = " + std::to_string(expected));
  }
  return ScalarField(mesh, std::move(values));
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write failed on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot rename onto " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "read failed on " + path.string());
  return buf.str();
}

void write_field(const ScalarField& u, const std::filesystem::path& path) { write_text_atomic(path, format_field(u)); }

ScalarField read_field(const std::filesystem::path& path) { return parse_field(read_text(path)); }

std::string format_profile_csv(const DecayProfile& profile) {
  std::string out = "r,phi,sigma\n";
  for (std::size_t j = 0; j < profile.radii.size(); ++j) {
    out += format_g17(profile.radii[j]) + ',' + format_g17(profile.phi[j]) + ',' + format_g17(profile.sigma[j]) + '\n';
  }
  return out;
}

DecayProfile parse_profile_csv(std::string_view text) {
  LineReader lines(text);
  std::string_view line = lines.expect("header");
  if (line != "r,phi,sigma") format_error("profile header must be 'r,phi,sigma'");
  DecayProfile p;
  while (lines.next(line)) {
    if (line.empty()) continue;
    double vals[3];
    std::size_t pos = 0;
    for (int c = 0; c < 3; ++c) {
      const std::size_t end = c < 2 ? line.find(',', pos) : line.size();
      if (end == std::string_view::npos) format_error("line " + std::to_string(lines.number()) + ": expected 3 columns");
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, vals[c]);
      if (ec != std::errc() || ptr != line.data() + end) {
        format_error("line " + std::to_string(lines.number()) + ": malformed number");
      }
      pos = end + 1;
    }
    if (!p.radii.empty() && !(vals[0] > p.radii.back())) format_error("profile radii must be strictly ascending");
    p.radii.push_back(vals[0]);
    p.phi.push_back(vals[1]);
    p.sigma.push_back(vals[2]);
  }
  return p;
}

void write_profile_csv(const DecayProfile& profile, const std::filesystem::path& path) {
  write_text_atomic(path, format_profile_csv(profile));
}

DecayProfile read_profile_csv(const std::filesystem::path& path) { return parse_profile_csv(read_text(path)); }

}  // namespace hessmin
