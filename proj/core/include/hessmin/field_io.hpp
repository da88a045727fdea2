#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hessmin/diagnostics.hpp"
#include "hessmin/mesh.hpp"

namespace hessmin {

/// Text field file: a `HESSMIN-FIELD 1` magic line, then `n`, `N`, `h`
/// lines, `values` followed by N^n shortest round-trip decimals (N per line,
/// last axis fastest), then `mask` and the node classes as I/B/E tokens.
std::string format_field(const ScalarField& u);
/// FormatError on a bad magic line, malformed header, count or mask mismatch.
ScalarField parse_field(std::string_view text);

/// Atomic write through a temporary sibling and rename. IoError on failure.
void write_field(const ScalarField& u, const std::filesystem::path& path);
ScalarField read_field(const std::filesystem::path& path);

/// `r,phi,sigma` header, rows ascending in r, values printed with %.17g.
std::string format_profile_csv(const DecayProfile& profile);
/// Reads radii, phi and sigma; the center is not stored and comes back as 0.
DecayProfile parse_profile_csv(std::string_view text);
void write_profile_csv(const DecayProfile& profile, const std::filesystem::path& path);
DecayProfile read_profile_csv(const std::filesystem::path& path);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
/// Full-precision %.17g rendering used in CSV and report files.
std::string format_g17(double v);

void write_text_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

}  // namespace hessmin
