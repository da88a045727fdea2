#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hessmin/config.hpp"
#include "hessmin/diagnostics.hpp"
#include "hessmin/error.hpp"
#include "hessmin/lemmas.hpp"
#include "hessmin/solver.hpp"

namespace hessmin {

/// Command-level exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitDiagnostics = 4,
  kExitIo = 5,
};

int exit_code(ErrorKind kind) noexcept;

/// Ordered `key: value` lines.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, long long value);
  void add_flag(std::string key, bool value);
  /// Empty when the key is absent.
  std::string get(std::string_view key) const;
  std::string str() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct PipelineResult {
  std::filesystem::path field_path;
  std::filesystem::path profile_path;
  std::filesystem::path report_path;
  SolveResult solve;
  DecayProfile profile;
  Report report;
};

/// Solve, then write `field.txt`, `profile.csv` and `report.txt` under cfg.out_dir.
/// Diagnostics that cannot be evaluated on the result (e.g. a power fit
/// on a flat profile) are reported by error kind instead of aborting.
PipelineResult run_pipeline(const RunConfig& cfg, std::ostream* log = nullptr);

/// Profile, fit and Morrey exponent of a stored field. Writes `profile.csv`
/// and `report.txt` under out_dir.
struct DiagnoseRequest {
  std::filesystem::path field;
  Point center{0.0, 0.0, 0.0};
  double r_min = 0.1;
  double r_max = 0.4;
  int levels = 8;
  double p = 0.0;  ///< 0 selects p = n
  std::filesystem::path out_dir = "out";
};
Report run_diagnose(const DiagnoseRequest& req);

/// Both lemma checks on a profile CSV; lemma B failures to match pairs are
/// reported rather than thrown.
Report run_lemmas(const DecayProfile& profile, const LemmaParams& params, double mu_interp);

/// Appends the report lines for a verdict, keys prefixed with `prefix`.
void add_verdict(Report& report, const std::string& prefix, const LemmaVerdict& v);

}  // namespace hessmin
