#pragma once

// Validated descriptions of the closed-form configurations.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "casimir/units.hpp"

namespace casimir {

/// Two external parallel cylinders, axes r_axes apart (r_axes > a + b).
struct ParallelCylinders {
  double a;
  double b;
  double r_axes;
};

/// Cylinder parallel to a half-space; z is the axis-to-plane distance.
struct CylinderPlane {
  double a;
  double z;
};

/// Sphere above a half-space; z is the centre-to-plane distance.
struct SpherePlane {
  double a;
  double z;
};

/// Inner cylinder of radius a coaxial with a cavity of radius b.
struct Coaxial {
  double a;
  double b;
};

/// Inner cylinder displaced by offset inside a cavity of radius b.
struct Eccentric {
  double a;
  double b;
  double offset;
};

/// A single cylinder; beta selects the regulated self-energy family.
struct SelfCylinder {
  double a;
  std::optional<double> beta;
};

/// Two half-spaces with gap d.
struct ParallelPlates {
  double d;
};

using Geometry = std::variant<ParallelCylinders, CylinderPlane, SpherePlane, Coaxial, Eccentric,
                              SelfCylinder, ParallelPlates>;

/// Throws DomainError naming the violated constraint.
void validate(const Geometry& g);

std::string_view kind_name(const Geometry& g);

/// Accepts the names returned by kind_name(); throws std::invalid_argument.
Geometry default_geometry(std::string_view kind);

std::vector<std::string_view> kind_names();

/// Dimension names of the variant (a, b, r_axes, z, offset, d, beta).
std::vector<std::string_view> field_names(const Geometry& g);
std::optional<double> get_field(const Geometry& g, std::string_view field);
/// Throws std::invalid_argument when the variant has no such field.
void set_field(Geometry& g, std::string_view field, double value);

UnitKind unit_kind(const Geometry& g);

/// Whether a force -dE/d(offset) is defined (eccentric only).
bool has_force(const Geometry& g);

struct ClosedFormValue {
  double energy;
  std::optional<double> force;
  UnitKind unit;
};

/// Dispatches to the matching closed form. Validates first.
ClosedFormValue closed_form(const Geometry& g, double n);

}  // namespace casimir
