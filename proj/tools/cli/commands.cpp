#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "casimir/pairwise.hpp"

namespace casimir::cli {

using nlohmann::json;

namespace {

std::string force_unit(UnitKind energy_unit) {
  switch (energy_unit) {
    case UnitKind::energy: return "L^-2";
    case UnitKind::energy_per_length: return "L^-3";
    case UnitKind::energy_per_area: return "L^-4";
  }
  return "?";
}

template <class F>
EnergyResult run_or_partial(F&& f, RowStatus& status) {
  try {
    return f();
  } catch (const NotConvergedError& e) {
    status = RowStatus::not_converged;
    return e.partial();
  }
}

void integrate_into(ResultRow& row, const Geometry& g, const MaterialPair& mat,
                    const QuadratureConfig& cfg, bool with_force) {
  const EnergyResult e =
      run_or_partial([&] { return integrate_geometry(g, mat, cfg); }, row.status);
  row.method = std::string(method_name(e.method));
  row.error_estimate = e.error_estimate;
  row.evaluations = e.evaluations_used;
  if (row.energy_closed) {
    row.energy_integrated = e.value;
  } else {
    row.energy = e.value;
  }
  if (with_force && has_force(g)) {
    const EnergyResult f = run_or_partial(
        [&] { return integrate_force(g, mat, cfg).value_or(EnergyResult{}); }, row.status);
    row.force = f.value + 0.0;
    row.force_error_estimate = f.error_estimate;
    row.evaluations += f.evaluations_used;
  }
}

// Keeps only the sweep position of a row whose evaluation failed.
ResultRow failed_row(const ResultRow& row, RowStatus status, const std::string& message) {
  ResultRow out;
  out.parameter_name = row.parameter_name;
  out.parameter = row.parameter;
  out.status = status;
  out.message = message;
  return out;
}

// Key of a column header without its unit suffix.
std::string column_key(const std::string& column) { return column.substr(0, column.find('[')); }

struct Cell {
  std::optional<double> number;
  std::optional<std::string> text;
  bool is_integer = false;
};

Cell cell(const ResultRow& row, const std::string& column) {
  const std::string key = column_key(column);
  if (key == "parameter") return {std::nullopt, row.parameter_name};
  if (key == "value") return {row.parameter, std::nullopt};
  if (key == "energy") return {row.energy, std::nullopt};
  if (key == "energy_closed") return {row.energy_closed, std::nullopt};
  if (key == "energy_integrated") return {row.energy_integrated, std::nullopt};
  if (key == "rel_deviation") return {row.rel_deviation, std::nullopt};
  if (key == "force") return {row.force, std::nullopt};
  if (key == "force_error_estimate") return {row.force_error_estimate, std::nullopt};
  if (key == "method") return {std::nullopt, row.method};
  if (key == "error_estimate") return {row.error_estimate, std::nullopt};
  if (key == "evaluations") return {static_cast<double>(row.evaluations), std::nullopt, true};
  if (key == "status") return {std::nullopt, std::string(status_name(row.status))};
  return {};
}

std::string render(const Cell& c, int digits) {
  if (c.text) return *c.text;
  if (!c.number) return "";
  if (c.is_integer) return fmt::format("{}", static_cast<std::size_t>(*c.number));
  return fmt::format("{:.{}g}", *c.number, digits);
}

bool row_is_finite(const ResultRow& row) {
  for (const auto* v : {&row.energy, &row.energy_closed, &row.energy_integrated,
                        &row.rel_deviation, &row.force, &row.force_error_estimate,
                        &row.error_estimate}) {
    if (*v && !std::isfinite(**v)) return false;
  }
  return true;
}

void report_row_errors(std::ostream& err, const std::vector<ResultRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    if (r.status == RowStatus::ok) continue;
    std::string where = rows.size() > 1 ? fmt::format("row {}", i + 1) : std::string("result");
    if (r.parameter) where += fmt::format(" ({}={:.6g})", r.parameter_name, *r.parameter);
    err << where << ": " << status_name(r.status);
    if (!r.message.empty()) err << ": " << r.message;
    err << '\n';
  }
}

void write_rows(std::ostream& out, OutputFormat format, const std::vector<std::string>& columns,
                const std::vector<ResultRow>& rows) {
  switch (format) {
    case OutputFormat::table: write_table(out, columns, rows); break;
    case OutputFormat::csv: write_csv(out, columns, rows); break;
    case OutputFormat::json: write_json(out, columns, rows); break;
  }
}

}  // namespace

std::string_view status_name(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::not_converged: return "not-converged";
    case RowStatus::domain_error: return "domain-error";
    case RowStatus::numerical_error: return "numerical-error";
  }
  return "?";
}

std::vector<std::string> result_columns(const Geometry& g, Computation mode) {
  const std::string u = fmt::format("[{}]", unit_label(unit_kind(g)));
  const std::string fu = fmt::format("[{}]", force_unit(unit_kind(g)));
  std::vector<std::string> cols{"parameter", "value"};
  if (mode == Computation::both) {
    cols.insert(cols.end(), {"energy_closed" + u, "energy_integrated" + u, "rel_deviation"});
  } else {
    cols.push_back("energy" + u);
  }
  if (has_force(g)) {
    cols.push_back("force" + fu);
    if (mode == Computation::integrate) cols.push_back("force_error_estimate" + fu);
  }
  cols.insert(cols.end(), {"method", "error_estimate" + u, "evaluations", "status"});
  return cols;
}

ResultRow compute_row(const SceneConfig& scene, std::optional<double> parameter) {
  ResultRow row;
  row.parameter = parameter;
  if (parameter && scene.sweep) row.parameter_name = scene.sweep->parameter;
  try {
    Geometry g = scene.geometry;
    if (parameter && scene.sweep) set_field(g, scene.sweep->parameter, *parameter);
    validate(g);
    const MaterialPair mat = scene.material.pair();
    switch (scene.computation) {
      case Computation::closed_form: {
        const ClosedFormValue cf = closed_form(g, scene.material.coupling());
        row.energy = cf.energy;
        if (cf.force) row.force = *cf.force + 0.0;
        row.method = "closed-form";
        row.error_estimate = 0.0;
        break;
      }
      case Computation::integrate:
        integrate_into(row, g, mat, scene.quadrature, true);
        break;
      case Computation::both: {
        const ClosedFormValue cf = closed_form(g, scene.material.coupling());
        row.energy_closed = cf.energy;
        if (cf.force) row.force = *cf.force + 0.0;
        integrate_into(row, g, mat, scene.quadrature, false);
        const double denom = std::abs(cf.energy);
        const double diff = std::abs(*row.energy_integrated - cf.energy);
        row.rel_deviation = denom > 0.0 ? diff / denom : diff;
        break;
      }
    }
    if (!row_is_finite(row)) throw NumericalError("non-finite result", 0.0, 0.0);
  } catch (const DomainError& e) {
    return failed_row(row, RowStatus::domain_error, e.what());
  } catch (const NumericalError& e) {
    return failed_row(row, RowStatus::numerical_error, e.what());
  }
  return row;
}

int exit_code_for(const std::vector<ResultRow>& rows) {
  int code = exit_ok;
  for (const auto& r : rows) {
    if (r.status == RowStatus::domain_error) return exit_domain;
    if (r.status != RowStatus::ok) code = exit_not_converged;
  }
  return code;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const std::vector<ResultRow>& rows) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_escape(columns[i]);
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << csv_escape(render(cell(row, columns[i]), 17));
    }
    out << "\r\n";
  }
}

void write_json(std::ostream& out, const std::vector<std::string>& columns,
                const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (const auto& col : columns) {
      const Cell c = cell(row, col);
      if (c.text) {
        obj[col] = c.text->empty() ? json(nullptr) : json(*c.text);
      } else if (c.number && c.is_integer) {
        obj[col] = static_cast<std::size_t>(*c.number);
      } else if (c.number) {
        obj[col] = *c.number;
      } else {
        obj[col] = nullptr;
      }
    }
    if (!row.message.empty()) obj["message"] = row.message;
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void write_table(std::ostream& out, const std::vector<std::string>& columns,
                 const std::vector<ResultRow>& rows) {
  std::vector<std::vector<std::string>> grid{columns};
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& col : columns) line.push_back(render(cell(row, col), 6));
    grid.push_back(std::move(line));
  }
  // Drop columns that are empty in every row (the sweep columns of eval).
  std::vector<bool> keep(columns.size(), false);
  std::vector<std::size_t> width(columns.size(), 0);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 1; r < grid.size(); ++r) keep[c] = keep[c] || !grid[r][c].empty();
    for (const auto& line : grid) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : grid) {
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!keep[c]) continue;
      if (!text.empty()) text += "  ";
      text += fmt::format("{:<{}}", line[c], width[c]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  }
}

int cmd_eval(const SceneConfig& scene, OutputFormat format, std::ostream& out, std::ostream& err) {
  const std::vector<ResultRow> rows{compute_row(scene)};
  write_rows(out, format, result_columns(scene.geometry, scene.computation), rows);
  report_row_errors(err, rows);
  return exit_code_for(rows);
}

int cmd_sweep(const SceneConfig& scene, OutputFormat format, std::ostream& out, std::ostream& err) {
  if (!scene.sweep) {
    err << "sweep: the configuration has no sweep section (or pass --param/--start/--stop)\n";
    return exit_usage;
  }
  std::vector<ResultRow> rows;
  for (double v : scene.sweep->values()) rows.push_back(compute_row(scene, v));
  write_rows(out, format, result_columns(scene.geometry, scene.computation), rows);
  report_row_errors(err, rows);
  return exit_code_for(rows);
}

int cmd_verify(verify::Profile profile, OutputFormat format, bool color, std::ostream& out) {
  return report_checks(verify::run_all(profile),
                       profile == verify::Profile::fast ? "fast" : "thorough", format, color, out);
}

int report_checks(const std::vector<verify::Check>& checks, const std::string& profile_name,
                  OutputFormat format, bool color, std::ostream& out) {
  const bool all_passed =
      std::all_of(checks.begin(), checks.end(), [](const verify::Check& c) { return c.passed; });

  if (format == OutputFormat::json) {
    json report;
    report["profile"] = profile_name;
    report["passed"] = all_passed;
    report["checks"] = json::array();
    for (const auto& c : checks) {
      report["checks"].push_back({
          {"criterion", c.criterion},
          {"title", verify::criterion_titles().at(c.criterion)},
          {"name", c.name},
          {"passed", c.passed},
          {"measured", c.measured},
          {"threshold", c.threshold},
          {"metric", c.metric},
          {"runtime_s", c.runtime_s},
          {"runtime_budget_s", c.runtime_budget_s},
          {"detail", c.detail},
      });
    }
    out << report.dump(2) << '\n';
    return all_passed ? exit_ok : exit_verify_failed;
  }

  std::size_t name_width = 4;
  std::size_t metric_width = 6;
  for (const auto& c : checks) {
    name_width = std::max(name_width, c.name.size());
    metric_width = std::max(metric_width, c.metric.size());
  }
  out << fmt::format("{:<4}  {:<2}  {:<{}}  {:>12}  {:>10}  {:<{}}  {:>9}\n", "", "#", "check",
                     name_width, "measured", "threshold", "metric", metric_width, "time");
  std::size_t passed = 0;
  for (const auto& c : checks) {
    std::string tag = c.passed ? "PASS" : "FAIL";
    if (color) tag = (c.passed ? "\x1b[32m" : "\x1b[31m") + tag + "\x1b[0m";
    passed += c.passed ? 1 : 0;
    out << fmt::format("{}  {:>2}  {:<{}}  {:>12.6g}  {:>10.3g}  {:<{}}  {:>8.3f}s\n", tag,
                       c.criterion, c.name, name_width, c.measured, c.threshold, c.metric,
                       metric_width, c.runtime_s);
    if (!c.passed && !c.detail.empty()) out << "      " << c.detail << '\n';
  }
  out << fmt::format("{}/{} checks passed ({} profile)\n", passed, checks.size(), profile_name);
  return all_passed ? exit_ok : exit_verify_failed;
}

}  // namespace casimir::cli
