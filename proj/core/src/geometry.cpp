#include "casimir/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void positive(double v, std::string_view what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

double* field_ptr(Geometry& g, std::string_view field) {
  return std::visit(
      overloaded{
          [&](ParallelCylinders& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "b") return &c.b;
            if (field == "r_axes") return &c.r_axes;
            return nullptr;
          },
          [&](CylinderPlane& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "z") return &c.z;
            return nullptr;
          },
          [&](SpherePlane& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "z") return &c.z;
            return nullptr;
          },
          [&](Coaxial& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "b") return &c.b;
            return nullptr;
          },
          [&](Eccentric& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "b") return &c.b;
            if (field == "offset") return &c.offset;
            return nullptr;
          },
          [&](SelfCylinder& c) -> double* {
            if (field == "a") return &c.a;
            if (field == "beta") {
              if (!c.beta) c.beta = 0.0;
              return &*c.beta;
            }
            return nullptr;
          },
          [&](ParallelPlates& c) -> double* { return field == "d" ? &c.d : nullptr; },
      },
      g);
}

}  // namespace

void validate(const Geometry& g) {
  std::visit(overloaded{
                 [](const ParallelCylinders& c) {
                   positive(c.a, "a");
                   positive(c.b, "b");
                   if (!(c.r_axes > c.a + c.b)) {
                     throw DomainError("cylinder-cylinder requires r_axes > a + b");
                   }
                 },
                 [](const CylinderPlane& c) {
                   positive(c.a, "a");
                   if (!(c.z > c.a)) throw DomainError("cylinder-plane requires z > a");
                 },
                 [](const SpherePlane& c) {
                   positive(c.a, "a");
                   if (!(c.z > c.a)) throw DomainError("sphere-plane requires z > a");
                 },
                 [](const Coaxial& c) {
                   positive(c.a, "a");
                   positive(c.b, "b");
                   if (!(c.a < c.b)) throw DomainError("coaxial requires a < b");
                 },
                 [](const Eccentric& c) {
                   positive(c.a, "a");
                   positive(c.b, "b");
                   if (!(c.offset >= 0.0)) throw DomainError("eccentric requires offset >= 0");
                   if (!(c.offset + c.a < c.b)) {
                     throw DomainError("eccentric requires offset + a < b");
                   }
                 },
                 [](const SelfCylinder& c) {
                   positive(c.a, "a");
                   if (c.beta) RegulatorExponent{*c.beta};
                 },
                 [](const ParallelPlates& c) { positive(c.d, "d"); },
             },
             g);
}

std::string_view kind_name(const Geometry& g) {
  return std::visit(overloaded{
                        [](const ParallelCylinders&) { return std::string_view("cylinder-cylinder"); },
                        [](const CylinderPlane&) { return std::string_view("cylinder-plane"); },
                        [](const SpherePlane&) { return std::string_view("sphere-plane"); },
                        [](const Coaxial&) { return std::string_view("coaxial"); },
                        [](const Eccentric&) { return std::string_view("eccentric"); },
                        [](const SelfCylinder&) { return std::string_view("self-cylinder"); },
                        [](const ParallelPlates&) { return std::string_view("plates"); },
                    },
                    g);
}

std::vector<std::string_view> kind_names() {
  return {"cylinder-cylinder", "cylinder-plane", "sphere-plane", "coaxial",
          "eccentric",         "self-cylinder",  "plates"};
}

Geometry default_geometry(std::string_view kind) {
  if (kind == "cylinder-cylinder") return ParallelCylinders{1.0, 1.0, 3.0};
  if (kind == "cylinder-plane") return CylinderPlane{1.0, 2.0};
  if (kind == "sphere-plane") return SpherePlane{1.0, 2.0};
  if (kind == "coaxial") return Coaxial{1.0, 2.0};
  if (kind == "eccentric") return Eccentric{0.5, 2.0, 0.5};
  if (kind == "self-cylinder") return SelfCylinder{1.0, std::nullopt};
  if (kind == "plates") return ParallelPlates{1.0};
  throw std::invalid_argument("unknown geometry kind '" + std::string(kind) + "'");
}

std::vector<std::string_view> field_names(const Geometry& g) {
  return std::visit(overloaded{
                        [](const ParallelCylinders&) -> std::vector<std::string_view> {
                          return {"a", "b", "r_axes"};
                        },
                        [](const CylinderPlane&) -> std::vector<std::string_view> { return {"a", "z"}; },
                        [](const SpherePlane&) -> std::vector<std::string_view> { return {"a", "z"}; },
                        [](const Coaxial&) -> std::vector<std::string_view> { return {"a", "b"}; },
                        [](const Eccentric&) -> std::vector<std::string_view> {
                          return {"a", "b", "offset"};
                        },
                        [](const SelfCylinder&) -> std::vector<std::string_view> {
                          return {"a", "beta"};
                        },
                        [](const ParallelPlates&) -> std::vector<std::string_view> { return {"d"}; },
                    },
                    g);
}

std::optional<double> get_field(const Geometry& g, std::string_view field) {
  if (const auto* self = std::get_if<SelfCylinder>(&g); self && field == "beta") return self->beta;
  Geometry copy = g;
  if (const double* p = field_ptr(copy, field)) return *p;
  return std::nullopt;
}

void set_field(Geometry& g, std::string_view field, double value) {
  double* p = field_ptr(g, field);
  if (!p) {
    throw std::invalid_argument("geometry '" + std::string(kind_name(g)) + "' has no field '" +
                                std::string(field) + "'");
  }
  *p = value;
}

UnitKind unit_kind(const Geometry& g) {
  if (std::holds_alternative<SpherePlane>(g)) return UnitKind::energy;
  if (std::holds_alternative<ParallelPlates>(g)) return UnitKind::energy_per_area;
  return UnitKind::energy_per_length;
}

bool has_force(const Geometry& g) { return std::holds_alternative<Eccentric>(g); }

ClosedFormValue closed_form(const Geometry& g, double n) {
  validate(g);
  ClosedFormValue out{0.0, std::nullopt, unit_kind(g)};
  std::visit(overloaded{
                 [&](const ParallelCylinders& c) { out.energy = energy_cyl_cyl(c.a, c.b, c.r_axes, n); },
                 [&](const CylinderPlane& c) { out.energy = energy_cyl_plane(c.a, c.z, n); },
                 [&](const SpherePlane& c) { out.energy = energy_sphere_plane(c.a, c.z, n); },
                 [&](const Coaxial& c) { out.energy = energy_coaxial(c.a, c.b, n); },
                 [&](const Eccentric& c) {
                   out.energy = energy_eccentric(c.a, c.b, c.offset, n);
                   out.force = force_eccentric(c.a, c.b, c.offset, n);
                 },
                 [&](const SelfCylinder& c) {
                   out.energy = c.beta ? self_energy_regulated(c.a, n, RegulatorExponent{*c.beta})
                                       : self_energy_dilute_cylinder(c.a, n);
                 },
                 [&](const ParallelPlates& c) { out.energy = energy_plates_dilute(c.d, n); },
             },
             g);
  return out;
}

}  // namespace casimir
