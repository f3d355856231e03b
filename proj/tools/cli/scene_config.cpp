#include "cli/scene_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(path + "/" + key + ": unknown field");
  }
}

const json& object_at(const json& doc, const char* key, const std::string& path) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(path + ": expected an object");
  return v;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "/" + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + "/" + key + ": must be finite");
  return x;
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key, path);
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path + "/" + key + ": expected a string");
  return v.get<std::string>();
}

Computation parse_computation(const std::string& s) {
  if (s == "closed-form") return Computation::closed_form;
  if (s == "integrate") return Computation::integrate;
  if (s == "both") return Computation::both;
  throw ConfigError("/computation: expected closed-form, integrate or both, got '" + s + "'");
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string_view computation_name(Computation c) {
  switch (c) {
    case Computation::closed_form: return "closed-form";
    case Computation::integrate: return "integrate";
    case Computation::both: return "both";
  }
  return "?";
}

MaterialPair MaterialSpec::pair() const {
  if (n) return MaterialPair::from_coupling(*n);
  return MaterialPair::from_permittivities(eps1.value_or(1.0), eps2.value_or(1.0));
}

double MaterialSpec::coupling() const { return n ? *n : pair().n(); }

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(k) / (steps - 1);
    out.push_back(log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f);
  }
  // Pin the end point exactly.
  if (steps > 1) out.back() = stop;
  return out;
}

SceneConfig parse_scene(const json& doc) {
  if (!doc.is_object()) throw ConfigError("/: expected a JSON object");
  reject_unknown(doc, "", {"geometry", "material", "computation", "quadrature", "sweep"});
  SceneConfig scene;

  if (!doc.contains("geometry")) throw ConfigError("/geometry: missing");
  const json& g = object_at(doc, "geometry", "/geometry");
  if (!g.contains("kind")) throw ConfigError("/geometry/kind: missing");
  const std::string kind = text(g, "kind", "/geometry");
  try {
    scene.geometry = default_geometry(kind);
  } catch (const std::invalid_argument&) {
    std::string known;
    for (auto k : kind_names()) known += std::string(known.empty() ? "" : ", ") + std::string(k);
    throw ConfigError("/geometry/kind: unknown kind '" + kind + "' (expected one of " + known + ")");
  }

  // Sweep first: its parameter may stand in for a geometry field.
  if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
    const json& s = object_at(doc, "sweep", "/sweep");
    reject_unknown(s, "/sweep", {"parameter", "start", "stop", "steps", "spacing"});
    SweepSpec sweep;
    sweep.parameter = text(s, "parameter", "/sweep");
    sweep.start = number(s, "start", "/sweep");
    sweep.stop = number(s, "stop", "/sweep");
    const json& steps = s.at("steps");
    if (!steps.is_number_integer() || steps.get<long long>() < 1) {
      throw ConfigError("/sweep/steps: expected an integer >= 1");
    }
    sweep.steps = static_cast<int>(steps.get<long long>());
    const std::string spacing = s.contains("spacing") ? text(s, "spacing", "/sweep") : "linear";
    if (spacing != "linear" && spacing != "log") {
      throw ConfigError("/sweep/spacing: expected linear or log");
    }
    sweep.log_spacing = spacing == "log";
    if (sweep.log_spacing && !(sweep.start > 0.0 && sweep.stop > 0.0)) {
      throw ConfigError("/sweep: log spacing requires positive start and stop");
    }
    const auto names = field_names(scene.geometry);
    if (std::find(names.begin(), names.end(), sweep.parameter) == names.end()) {
      throw ConfigError("/sweep/parameter: '" + sweep.parameter + "' is not a field of geometry '" +
                        kind + "'");
    }
    scene.sweep = sweep;
  }

  std::set<std::string> allowed{"kind"};
  for (auto name : field_names(scene.geometry)) allowed.emplace(name);
  reject_unknown(g, "/geometry", allowed);
  for (auto name : field_names(scene.geometry)) {
    const std::string key(name);
    const bool swept = scene.sweep && scene.sweep->parameter == key;
    if (g.contains(key) && !g.at(key).is_null()) {
      set_field(scene.geometry, key, number(g, key, "/geometry"));
    } else if (swept) {
      set_field(scene.geometry, key, scene.sweep->start);
    } else if (key == "beta") {
      std::get<SelfCylinder>(scene.geometry).beta.reset();
    } else {
      throw ConfigError("/geometry/" + key + ": missing (required for " + kind + ")");
    }
  }

  if (doc.contains("material")) {
    const json& m = object_at(doc, "material", "/material");
    reject_unknown(m, "/material", {"eps1", "eps2", "n"});
    scene.material.eps1 = optional_number(m, "eps1", "/material");
    scene.material.eps2 = optional_number(m, "eps2", "/material");
    scene.material.n = optional_number(m, "n", "/material");
    if (scene.material.n && (scene.material.eps1 || scene.material.eps2)) {
      throw ConfigError("/material: give either n or eps1/eps2, not both");
    }
    if (!scene.material.n && (scene.material.eps1.has_value() != scene.material.eps2.has_value())) {
      throw ConfigError("/material: eps1 and eps2 must be given together");
    }
  }
  if (!scene.material.n && !scene.material.eps1) scene.material.n = 1.0;

  if (doc.contains("computation")) scene.computation = parse_computation(text(doc, "computation", ""));

  if (doc.contains("quadrature")) {
    const json& q = object_at(doc, "quadrature", "/quadrature");
    reject_unknown(q, "/quadrature", {"rel_tol", "abs_tol", "max_evaluations", "method", "seed"});
    if (auto v = optional_number(q, "rel_tol", "/quadrature")) scene.quadrature.rel_tol = *v;
    if (auto v = optional_number(q, "abs_tol", "/quadrature")) scene.quadrature.abs_tol = *v;
    if (q.contains("max_evaluations")) {
      const json& v = q.at("max_evaluations");
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError("/quadrature/max_evaluations: expected a non-negative integer");
      }
      scene.quadrature.max_evaluations = v.get<std::size_t>();
    }
    if (q.contains("method")) {
      const auto m = parse_method(text(q, "method", "/quadrature"));
      if (!m) throw ConfigError("/quadrature/method: expected adaptive, quasi-random or monte-carlo");
      scene.quadrature.method = *m;
    }
    if (q.contains("seed")) {
      const json& v = q.at("seed");
      if (!v.is_number_integer()) throw ConfigError("/quadrature/seed: expected an integer");
      scene.quadrature.seed = v.get<std::uint64_t>();
    }
    try {
      scene.quadrature.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("/quadrature: ") + e.what());
    }
  }

  if (scene.sweep) return scene;
  try {
    validate(scene.geometry);
  } catch (const DomainError& e) {
    throw DomainError(std::string("/geometry: ") + e.what());
  }
  return scene;
}

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": syntax error: " << e.what();
    throw ConfigError(os.str());
  }
}

SceneConfig parse_scene_text(std::string_view text, std::string_view source) {
  return parse_scene(parse_json_text(text, source));
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

SceneConfig load_scene(const std::string& path) { return parse_scene(load_json(path)); }

json to_json(const SceneConfig& scene) {
  json doc;
  json g;
  g["kind"] = std::string(kind_name(scene.geometry));
  for (auto name : field_names(scene.geometry)) {
    if (auto v = get_field(scene.geometry, name)) g[std::string(name)] = *v;
  }
  doc["geometry"] = g;
  json m = json::object();
  if (scene.material.n) m["n"] = *scene.material.n;
  if (scene.material.eps1) m["eps1"] = *scene.material.eps1;
  if (scene.material.eps2) m["eps2"] = *scene.material.eps2;
  doc["material"] = m;
  doc["computation"] = std::string(computation_name(scene.computation));
  doc["quadrature"] = {
      {"rel_tol", scene.quadrature.rel_tol},
      {"abs_tol", scene.quadrature.abs_tol},
      {"max_evaluations", scene.quadrature.max_evaluations},
      {"method", std::string(method_name(scene.quadrature.method))},
      {"seed", scene.quadrature.seed},
  };
  if (scene.sweep) {
    doc["sweep"] = {
        {"parameter", scene.sweep->parameter}, {"start", scene.sweep->start},
        {"stop", scene.sweep->stop},           {"steps", scene.sweep->steps},
        {"spacing", scene.sweep->log_spacing ? "log" : "linear"},
    };
  }
  return doc;
}

}  // namespace casimir::cli
