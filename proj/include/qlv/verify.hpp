#ifndef QLV_VERIFY_HPP
#define QLV_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qlv::verify {

struct CheckReport {
  std::string name;
  bool exact = false;   // q-series checks compare coefficients exactly
  double lhs = 0.0;     // representative values (worst sample for multi-point checks)
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;  // 0 for exact checks
  bool pass = false;
  double runtime_ms = 0.0;
  std::string paper_location;
  std::optional<std::int64_t> mismatch_exp24;  // exact checks: first bad exponent
  std::string detail;                          // table diagnostics, not in JSON
};

struct VerifyConfig {
  std::int64_t order24 = 4800;                 // exact checks compare through here
  std::optional<double> tolerance_override;    // numeric checks only
  std::optional<std::uint64_t> seed;           // extra random sample points
  int jobs = 1;
};

const std::vector<std::string>& check_names();
bool has_check(const std::string& name);

/// Runs one named check; throws std::invalid_argument for unknown names.
CheckReport run_check(const std::string& name, const VerifyConfig& cfg);

/// Runs every check whose name starts with prefix (all when empty), in
/// registry order.  cfg.jobs > 1 executes checks concurrently; the report
/// order is unaffected.
std::vector<CheckReport> run_all(const VerifyConfig& cfg, const std::string& prefix = "");

/// Wire format: {name, lhs, rhs, abs_err, rel_err, tolerance, pass,
/// runtime_ms, paper_location}; lhs/rhs are the string "exact" for exact
/// checks, numbers otherwise; numbers carry 17 significant digits.
std::string report_to_json(const CheckReport& r);
std::string reports_to_json(const std::vector<CheckReport>& rs);

void print_report_table(std::ostream& os, const std::vector<CheckReport>& rs);

}  // namespace qlv::verify

#endif
