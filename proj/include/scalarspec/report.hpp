// SPDX-License-Identifier: Apache-2.0
//
// Run reports and their CSV/JSON serialization.  The CSV schema is part of
// the tool contract:
//   suite,case,n,m,c_or_r,quantity,value,bound_or_target,slack,tolerance,pass
// with floats printed at 17 significant digits so re-parsing is lossless and
// repeated runs are byte-identical.

#pragma once

#include "scalarspec/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scalarspec {

class IoError : public Error {
public:
  using Error::Error;
};

struct ReportRow {
  std::string suite;
  std::string case_name;
  int n = 0;
  std::optional<int> m;
  std::optional<double> c_or_r;
  std::string quantity;
  double value = 0.0;
  double bound_or_target = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool operator==(const ReportRow&) const = default;
};

struct RunReport {
  std::string suite;
  std::vector<ReportRow> rows;
  bool overall_pass = true;
  double wall_time_s = 0.0;
  std::string tool_version;

  void add(ReportRow row) {
    overall_pass = overall_pass && row.pass;
    rows.push_back(std::move(row));
  }
  /// Fixed report order: (suite, n, m, case, quantity).
  void sort_rows();
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Format a double with 17 significant digits (shortest lossless form).
std::string format_float(double x);

std::string report_to_csv(const RunReport& report);
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Write text to path; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// ---------------------------------------------------------------------------
// Sweep configuration
// ---------------------------------------------------------------------------

struct SweepConfig {
  int n_min = 5;
  int n_max = 12;
  std::vector<int> m_list;  // empty = every valid m for each n
  std::vector<double> r_list = {1.1, 1.5, 2.0, 3.0};
  int resolution = 64;
  std::vector<int> grid_sizes = {200, 400, 800};
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 42;

  /// Named tolerance with its pinned default.
  double tol(const std::string& name) const;

  void validate() const;
};

/// Parse a JSON config document; unknown keys are rejected.
SweepConfig config_from_json(const std::string& text);
std::string config_to_json(const SweepConfig& config);

}  // namespace scalarspec
