#include "casimir/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw GeometryError(std::string(what) + " must be positive and finite");
  }
}

void finite(double v, const char* what) {
  if (!std::isfinite(v)) throw GeometryError(std::string(what) + " must be finite");
}

Separation from_gap(double gap) {
  if (gap < 0.0) return {0.0, true};
  return {gap, false};
}

constexpr Separation overlapping{0.0, true};

double interval_gap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(lo2 - hi1, lo1 - hi2);
}

// Distance between the two disks (or points, radius 0) x interval products.
double hypot_gaps(double g1, double g2) {
  return std::hypot(std::max(g1, 0.0), std::max(g2, 0.0));
}

Separation ordered(const Region2D& r1, const Region2D& r2);
Separation ordered(const Region3D& r1, const Region3D& r2);

}  // namespace

void validate(const Region2D& r) {
  std::visit(overloaded{
                 [](const Disk& d) {
                   finite(d.center[0], "disk centre");
                   finite(d.center[1], "disk centre");
                   positive(d.radius, "disk radius");
                 },
                 [](const ExteriorDisk& d) { positive(d.radius, "exterior-disk radius"); },
                 [](const HalfPlane& h) { finite(h.offset, "half-plane offset"); },
                 [](const Annulus& a) {
                   positive(a.r_in, "annulus inner radius");
                   positive(a.r_out, "annulus outer radius");
                   if (!(a.r_in < a.r_out)) throw GeometryError("annulus requires r_in < r_out");
                 },
             },
             r);
}

void validate(const Region3D& r) {
  std::visit(overloaded{
                 [](const Ball& b) {
                   for (double c : b.center) finite(c, "ball centre");
                   positive(b.radius, "ball radius");
                 },
                 [](const HalfSpace& h) { finite(h.offset, "half-space offset"); },
                 [](const Slab& s) {
                   finite(s.z0, "slab z0");
                   positive(s.thickness, "slab thickness");
                 },
                 [](const CylinderSegment& c) {
                   for (double x : c.center) finite(x, "cylinder centre");
                   positive(c.radius, "cylinder radius");
                   positive(c.length, "cylinder length");
                 },
             },
             r);
}

bool is_bounded(const Region2D& r) {
  return std::holds_alternative<Disk>(r) || std::holds_alternative<Annulus>(r);
}

bool is_bounded(const Region3D& r) {
  return std::holds_alternative<Ball>(r) || std::holds_alternative<CylinderSegment>(r);
}

double length_scale(const Region2D& r) {
  return std::visit(overloaded{
                        [](const Disk& d) { return d.radius; },
                        [](const ExteriorDisk& d) { return d.radius; },
                        [](const HalfPlane&) { return 0.0; },
                        [](const Annulus& a) { return a.r_out; },
                    },
                    r);
}

double length_scale(const Region3D& r) {
  return std::visit(overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const HalfSpace&) { return 0.0; },
                        [](const Slab& s) { return s.thickness; },
                        [](const CylinderSegment& c) { return std::max(c.radius, c.length); },
                    },
                    r);
}

double distance_to(const Vec2& p, const Region2D& r) {
  return std::visit(
      overloaded{
          [&](const Disk& d) {
            return std::max(0.0, std::hypot(p[0] - d.center[0], p[1] - d.center[1]) - d.radius);
          },
          [&](const ExteriorDisk& d) { return std::max(0.0, d.radius - std::hypot(p[0], p[1])); },
          [&](const HalfPlane& h) { return std::max(0.0, h.offset - p[0]); },
          [&](const Annulus& a) {
            const double rho = std::hypot(p[0], p[1]);
            return std::max({0.0, a.r_in - rho, rho - a.r_out});
          },
      },
      r);
}

double distance_to(const Vec3& p, const Region3D& r) {
  return std::visit(
      overloaded{
          [&](const Ball& b) {
            return std::max(0.0, std::hypot(p[0] - b.center[0], p[1] - b.center[1],
                                            p[2] - b.center[2]) -
                                     b.radius);
          },
          [&](const HalfSpace& h) { return std::max(0.0, h.offset - p[2]); },
          [&](const Slab& s) {
            return std::max({0.0, s.z0 - p[2], p[2] - (s.z0 + s.thickness)});
          },
          [&](const CylinderSegment& c) {
            const double radial = std::hypot(p[0] - c.center[0], p[1] - c.center[1]) - c.radius;
            const double axial = std::abs(p[2] - c.center[2]) - 0.5 * c.length;
            return hypot_gaps(radial, axial);
          },
      },
      r);
}

namespace {

Separation ordered(const Region2D& r1, const Region2D& r2) {
  if (const auto* d = std::get_if<Disk>(&r1)) {
    // Inside-point distances are clamped at 0, so recover the signed gap
    // for the disk-disk case where overlap depth matters.
    if (const auto* e = std::get_if<Disk>(&r2)) {
      return from_gap(std::hypot(d->center[0] - e->center[0], d->center[1] - e->center[1]) -
                      d->radius - e->radius);
    }
    const double to_centre = distance_to(d->center, r2);
    if (to_centre <= 0.0) return overlapping;
    return from_gap(to_centre - d->radius);
  }
  if (const auto* a = std::get_if<Annulus>(&r1)) {
    return std::visit(overloaded{
                          [&](const Annulus& b) {
                            return from_gap(interval_gap(a->r_in, a->r_out, b.r_in, b.r_out));
                          },
                          [&](const ExteriorDisk& e) { return from_gap(e.radius - a->r_out); },
                          [&](const HalfPlane& h) { return from_gap(h.offset - a->r_out); },
                          [&](const Disk&) { return overlapping; },
                      },
                      r2);
  }
  // Both unbounded: exterior disks and half-planes always intersect.
  return overlapping;
}

Separation ordered(const Region3D& r1, const Region3D& r2) {
  if (const auto* b = std::get_if<Ball>(&r1)) {
    if (const auto* c = std::get_if<Ball>(&r2)) {
      return from_gap(std::hypot(b->center[0] - c->center[0], b->center[1] - c->center[1],
                                 b->center[2] - c->center[2]) -
                      b->radius - c->radius);
    }
    const double to_centre = distance_to(b->center, r2);
    if (to_centre <= 0.0) return overlapping;
    return from_gap(to_centre - b->radius);
  }
  if (const auto* c = std::get_if<CylinderSegment>(&r1)) {
    const double lo = c->center[2] - 0.5 * c->length;
    const double hi = c->center[2] + 0.5 * c->length;
    return std::visit(
        overloaded{
            [&](const CylinderSegment& o) {
              const double radial = std::hypot(c->center[0] - o.center[0], c->center[1] - o.center[1]) -
                                    c->radius - o.radius;
              const double axial = interval_gap(lo, hi, o.center[2] - 0.5 * o.length,
                                                o.center[2] + 0.5 * o.length);
              if (radial < 0.0 && axial < 0.0) return overlapping;
              return Separation{hypot_gaps(radial, axial), false};
            },
            [&](const HalfSpace& h) { return from_gap(h.offset - hi); },
            [&](const Slab& s) { return from_gap(interval_gap(lo, hi, s.z0, s.z0 + s.thickness)); },
            [&](const Ball&) { return overlapping; },
        },
        r2);
  }
  if (const auto* s = std::get_if<Slab>(&r1)) {
    return std::visit(overloaded{
                          [&](const Slab& o) {
                            return from_gap(interval_gap(s->z0, s->z0 + s->thickness, o.z0,
                                                         o.z0 + o.thickness));
                          },
                          [&](const HalfSpace& h) { return from_gap(h.offset - s->z0 - s->thickness); },
                          [&](const auto&) { return overlapping; },
                      },
                      r2);
  }
  // Two half-spaces z > h1 and z > h2 always intersect.
  return overlapping;
}

int rank(const Region2D& r) {
  if (std::holds_alternative<Disk>(r)) return 0;
  if (std::holds_alternative<Annulus>(r)) return 1;
  return 2;
}

int rank(const Region3D& r) {
  if (std::holds_alternative<Ball>(r)) return 0;
  if (std::holds_alternative<CylinderSegment>(r)) return 1;
  if (std::holds_alternative<Slab>(r)) return 2;
  return 3;
}

}  // namespace

Separation min_separation(const Region2D& r1, const Region2D& r2) {
  validate(r1);
  validate(r2);
  return rank(r1) <= rank(r2) ? ordered(r1, r2) : ordered(r2, r1);
}

Separation min_separation(const Region3D& r1, const Region3D& r2) {
  validate(r1);
  validate(r2);
  return rank(r1) <= rank(r2) ? ordered(r1, r2) : ordered(r2, r1);
}

}  // namespace casimir
