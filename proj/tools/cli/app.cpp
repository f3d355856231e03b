#include "cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "casimir/errors.hpp"
#include "cli/commands.hpp"
#include "cli/scene_config.hpp"

namespace casimir::cli {

using nlohmann::json;

json overlay(json doc, const Overrides& o) {
  if (doc.is_null()) doc = json::object();
  if (o.geometry) {
    json& g = doc["geometry"];
    if (!g.is_object() || g.value("kind", std::string()) != *o.geometry) {
      g = json{{"kind", *o.geometry}};
    }
  }
  if (!o.dimensions.empty()) {
    json& g = doc["geometry"];
    if (!g.is_object()) g = json::object();
    for (const auto& [name, value] : o.dimensions) g[name] = value;
  }
  if (o.n || o.eps1 || o.eps2) {
    json& m = doc["material"];
    if (!m.is_object()) m = json::object();
    const bool eps = o.eps1 || o.eps2;
    if (o.n && !eps) {
      m.erase("eps1");
      m.erase("eps2");
    }
    if (eps && !o.n) m.erase("n");
    if (o.n) m["n"] = *o.n;
    if (o.eps1) m["eps1"] = *o.eps1;
    if (o.eps2) m["eps2"] = *o.eps2;
  }
  if (o.mode) doc["computation"] = *o.mode;
  if (o.rel_tol || o.max_evals || o.seed || o.method) {
    json& q = doc["quadrature"];
    if (!q.is_object()) q = json::object();
    if (o.rel_tol) q["rel_tol"] = *o.rel_tol;
    if (o.max_evals) q["max_evaluations"] = *o.max_evals;
    if (o.seed) q["seed"] = *o.seed;
    if (o.method) q["method"] = *o.method;
  }
  if (o.param || o.start || o.stop || o.steps || o.spacing) {
    json& s = doc["sweep"];
    if (!s.is_object()) s = json::object();
    if (o.param) s["parameter"] = *o.param;
    if (o.start) s["start"] = *o.start;
    if (o.stop) s["stop"] = *o.stop;
    if (o.steps) s["steps"] = *o.steps;
    if (o.spacing) s["spacing"] = *o.spacing;
  }
  return doc;
}

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::string profile = "fast";
  Overrides o;
};

OutputFormat parse_format(const std::string& s, OutputFormat fallback) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "table") return OutputFormat::table;
  return fallback;
}

void add_scene_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "JSON scene file")->check(CLI::ExistingFile);
  cmd->add_option("--geometry", opt.o.geometry, "Geometry kind")
      ->check(CLI::IsMember({"cylinder-cylinder", "cylinder-plane", "sphere-plane", "coaxial",
                             "eccentric", "self-cylinder", "plates"}));
  for (const char* dim : {"a", "b", "offset", "z", "d", "r-axes", "beta"}) {
    std::string field = dim;
    std::replace(field.begin(), field.end(), '-', '_');
    cmd->add_option_function<double>(
        std::string("--") + dim, [&opt, field](double v) { opt.o.dimensions[field] = v; },
        "Geometry dimension " + field);
  }
  cmd->add_option("--eps1", opt.o.eps1, "Permittivity of body 1");
  cmd->add_option("--eps2", opt.o.eps2, "Permittivity of body 2");
  cmd->add_option("--n", opt.o.n, "Coupling n directly");
  cmd->add_option("--rel-tol", opt.o.rel_tol, "Relative tolerance of the integration");
  cmd->add_option("--max-evals", opt.o.max_evals, "Integrand evaluation budget");
  cmd->add_option("--seed", opt.o.seed, "Seed for the randomised methods");
  cmd->add_option("--method", opt.o.method, "adaptive, quasi-random or monte-carlo");
  cmd->add_option("--out", opt.out, "Write results to this file instead of stdout");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool out_is_terminal) {
  CLI::App app{"Retarded van der Waals energies between dilute dielectric bodies", "casimir"};
  app.require_subcommand(1);
  Options opt;

  auto* eval = app.add_subcommand("eval", "Evaluate a geometry (closed form by default)");
  add_scene_options(eval, opt);
  eval->add_option("--mode", opt.o.mode, "closed-form, integrate or both")
      ->check(CLI::IsMember({"closed-form", "integrate", "both"}));
  eval->add_option("--format", opt.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* integrate = app.add_subcommand("integrate", "Brute-force pairwise integration");
  add_scene_options(integrate, opt);
  integrate->add_option("--format", opt.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "Tabulate over one geometry parameter");
  add_scene_options(sweep, opt);
  sweep->add_option("--mode", opt.o.mode, "closed-form, integrate or both")
      ->check(CLI::IsMember({"closed-form", "integrate", "both"}));
  sweep->add_option("--param", opt.o.param, "Geometry field to sweep");
  sweep->add_option("--start", opt.o.start, "First value");
  sweep->add_option("--stop", opt.o.stop, "Last value");
  sweep->add_option("--steps", opt.o.steps, "Number of values")->check(CLI::PositiveNumber);
  sweep->add_option("--spacing", opt.o.spacing, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--format", opt.format, "csv, json or table")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* verify_cmd = app.add_subcommand("verify", "Run the self-check suite");
  verify_cmd->add_option("--profile", opt.profile, "fast or thorough")
      ->check(CLI::IsMember({"fast", "thorough"}));
  verify_cmd->add_option("--format", opt.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  verify_cmd->add_option("--out", opt.out, "Write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << opt.out << '\n';
      return exit_usage;
    }
  }
  std::ostream& sink = opt.out.empty() ? out : file;
  const bool color = opt.out.empty() && out_is_terminal && std::getenv("NO_COLOR") == nullptr;

  try {
    if (verify_cmd->parsed()) {
      const auto profile = opt.profile == "thorough" ? verify::Profile::thorough
                                                     : verify::Profile::fast;
      return cmd_verify(profile, parse_format(opt.format, OutputFormat::table), color, sink);
    }
    if (integrate->parsed()) opt.o.mode = "integrate";
    json doc = opt.config.empty() ? json::object() : load_json(opt.config);
    const SceneConfig scene = parse_scene(overlay(std::move(doc), opt.o));
    if (sweep->parsed()) return cmd_sweep(scene, parse_format(opt.format, OutputFormat::csv), sink, err);
    return cmd_eval(scene, parse_format(opt.format, OutputFormat::table), sink, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return exit_not_converged;
  }
}

}  // namespace casimir::cli
