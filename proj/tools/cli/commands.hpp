#pragma once
// Subcommand bodies. Each writes to the given streams and returns the
// process exit code, so tests can drive them without spawning processes.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/verification.hpp"
#include "cli/scene_config.hpp"

namespace casimir::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_domain = 2,
  exit_not_converged = 3,
  exit_verify_failed = 4,
};

enum class OutputFormat { table, csv, json };

enum class RowStatus { ok, not_converged, domain_error, numerical_error };

std::string_view status_name(RowStatus s);

struct ResultRow {
  std::string parameter_name;  // empty unless swept
  std::optional<double> parameter;
  std::optional<double> energy;             // closed-form or integrate mode
  std::optional<double> energy_closed;      // both mode
  std::optional<double> energy_integrated;  // both mode
  std::optional<double> rel_deviation;      // both mode
  std::optional<double> force;
  std::optional<double> force_error_estimate;  // integrate mode
  std::string method;
  std::optional<double> error_estimate;
  std::size_t evaluations = 0;
  RowStatus status = RowStatus::ok;
  std::string message;
};

/// Column headers, a pure function of the geometry kind and the mode.
std::vector<std::string> result_columns(const Geometry& g, Computation mode);

/// Evaluates one scene; failures are captured in the row status.
ResultRow compute_row(const SceneConfig& scene, std::optional<double> parameter = std::nullopt);

/// Exit code summarising a set of rows: domain errors dominate
/// non-convergence.
int exit_code_for(const std::vector<ResultRow>& rows);

void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<std::string>& columns,
                const std::vector<ResultRow>& rows);
void write_table(std::ostream& out, const std::vector<std::string>& columns,
                 const std::vector<ResultRow>& rows);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

/// `eval` and `integrate`: one row at the configured geometry.
int cmd_eval(const SceneConfig& scene, OutputFormat format, std::ostream& out, std::ostream& err);

/// One row per sweep step, emitted in step order.
int cmd_sweep(const SceneConfig& scene, OutputFormat format, std::ostream& out, std::ostream& err);

int cmd_verify(verify::Profile profile, OutputFormat format, bool color, std::ostream& out);

/// Prints a check list as a table or JSON report; exit_verify_failed if any
/// check failed.
int report_checks(const std::vector<verify::Check>& checks, const std::string& profile_name,
                  OutputFormat format, bool color, std::ostream& out);

}  // namespace casimir::cli
