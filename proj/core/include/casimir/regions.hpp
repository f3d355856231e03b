#pragma once

// Primitive bodies for brute-force pair summation.
//
// Two-dimensional regions are cross-sections of bodies that are infinite
// and uniform along z; their pair integrals give energies per unit length.

#include <array>
#include <variant>

#include "casimir/kernel.hpp"

namespace casimir {

using Vec2 = std::array<double, 2>;

struct Disk {
  Vec2 center;
  double radius;
};

/// The set rho > radius around the origin.
struct ExteriorDisk {
  double radius;
};

/// The set x > offset.
struct HalfPlane {
  double offset;
};

/// r_in < rho < r_out around the origin.
struct Annulus {
  double r_in;
  double r_out;
};

using Region2D = std::variant<Disk, ExteriorDisk, HalfPlane, Annulus>;

struct Ball {
  Vec3 center;
  double radius;
};

/// The set z > offset.
struct HalfSpace {
  double offset;
};

/// z0 < z < z0 + thickness, unbounded in x and y.
struct Slab {
  double z0;
  double thickness;
};

/// Finite solid cylinder with axis parallel to z. `center` is the midpoint
/// of the axis.
struct CylinderSegment {
  Vec3 center;
  double radius;
  double length;
};

using Region3D = std::variant<Ball, HalfSpace, Slab, CylinderSegment>;

/// Throws GeometryError for non-positive or non-finite dimensions.
void validate(const Region2D& r);
void validate(const Region3D& r);

bool is_bounded(const Region2D& r);
bool is_bounded(const Region3D& r);

/// Largest dimension of the bounded regions involved (radius, length, ...).
double length_scale(const Region2D& r);
double length_scale(const Region3D& r);

struct Separation {
  double distance;
  bool overlap;
};

/// Exact minimum distance between two regions. Overlapping regions give
/// {0, true}; touching regions give {0, false}.
Separation min_separation(const Region2D& r1, const Region2D& r2);
Separation min_separation(const Region3D& r1, const Region3D& r2);

/// Distance from a point to a region (0 inside).
double distance_to(const Vec2& p, const Region2D& r);
double distance_to(const Vec3& p, const Region3D& r);

}  // namespace casimir
