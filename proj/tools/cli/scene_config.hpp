#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "casimir/cubature.hpp"
#include "casimir/geometry.hpp"
#include "casimir/kernel.hpp"

namespace casimir::cli {

/// Malformed or incomplete configuration (exit code 1). The message names
/// the offending field as a JSON pointer, or the line and column of a
/// syntax error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Computation { closed_form, integrate, both };

std::string_view computation_name(Computation c);

struct MaterialSpec {
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> n;

  MaterialPair pair() const;
  /// The coupling as given; pair().n() may differ from it in the last bit.
  double coupling() const;
};

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct SceneConfig {
  Geometry geometry = Coaxial{1.0, 2.0};
  MaterialSpec material;
  Computation computation = Computation::closed_form;
  QuadratureConfig quadrature;
  std::optional<SweepSpec> sweep;
};

/// Builds a scene from a JSON document. Geometry constraints are checked
/// too; violations raise DomainError prefixed with the field path. With a
/// sweep the constraints are checked per step instead, so that one bad step
/// does not void the whole run.
SceneConfig parse_scene(const nlohmann::json& doc);
/// Parses JSON text; syntax errors become ConfigError with line:column.
nlohmann::json parse_json_text(std::string_view text, std::string_view source = "<config>");
SceneConfig parse_scene_text(std::string_view text, std::string_view source = "<config>");
SceneConfig load_scene(const std::string& path);
nlohmann::json load_json(const std::string& path);

nlohmann::json to_json(const SceneConfig& scene);

}  // namespace casimir::cli
