#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "casimir/closed_forms.hpp"
#include "casimir/pairwise.hpp"
#include "casimir/regions.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

QuadratureConfig tolerance(double rel_tol) {
  QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  return cfg;
}

const MaterialPair unit = MaterialPair::from_coupling(1.0);

}  // namespace

TEST_CASE("region validation") {
  CHECK_THROWS_AS(validate(Region2D{Disk{{0, 0}, 0.0}}), GeometryError);
  CHECK_THROWS_AS(validate(Region2D{Annulus{2, 1}}), GeometryError);
  CHECK_THROWS_AS(validate(Region3D{Ball{{0, 0, NAN}, 1}}), GeometryError);
  CHECK_THROWS_AS(validate(Region3D{Slab{0, -1}}), GeometryError);
  CHECK_NOTHROW(validate(Region3D{CylinderSegment{{0, 0, 0}, 1, 3}}));
  CHECK(is_bounded(Region2D{Disk{{0, 0}, 1}}));
  CHECK_FALSE(is_bounded(Region2D{ExteriorDisk{1}}));
  CHECK_FALSE(is_bounded(Region3D{HalfSpace{0}}));
}

TEST_CASE("minimum separation") {
  // Disk at offset R inside the exterior of a disk of radius b: b - R - a.
  auto s = min_separation(Region2D{Disk{{0.5, 0}, 0.5}}, Region2D{ExteriorDisk{2}});
  CHECK(s.distance == doctest::Approx(1.0));
  CHECK_FALSE(s.overlap);
  // Two disks with centres D apart: D - a - b.
  s = min_separation(Region2D{Disk{{0, 0}, 1}}, Region2D{Disk{{3, 4}, 2}});
  CHECK(s.distance == doctest::Approx(2.0));
  s = min_separation(Region2D{Disk{{0, 0}, 1}}, Region2D{Disk{{1, 0}, 1}});
  CHECK(s.overlap);
  // Ball at height z above a half-space: z - a.
  const auto b = min_separation(Region3D{Ball{{0, 0, 0}, 1}}, Region3D{HalfSpace{2.5}});
  CHECK(b.distance == doctest::Approx(1.5));
  // Order does not matter.
  const auto r = min_separation(Region3D{HalfSpace{2.5}}, Region3D{Ball{{0, 0, 0}, 1}});
  CHECK(r.distance == b.distance);
  // Disk and half-plane.
  s = min_separation(Region2D{Disk{{0, 0}, 1}}, Region2D{HalfPlane{2}});
  CHECK(s.distance == doctest::Approx(1.0));
  CHECK(distance_to(Vec2{0, 0}, Region2D{ExteriorDisk{2}}) == doctest::Approx(2.0));
  CHECK(distance_to(Vec3{0, 0, 0}, Region3D{Slab{1, 2}}) == doctest::Approx(1.0));
}

TEST_CASE("angular reduction") {
  CHECK(rel(angular_kernel_reduction(0, 1.5), 2 * pi / std::pow(1.5, 6)) < 1e-15);
  CHECK(angular_kernel_reduction(1, 2) == angular_kernel_reduction(2, 1));
  for (auto [rho, rho_p] : {std::pair{1.0, 2.0}, {0.3, 0.35}, {2.0, 7.0}}) {
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double th) {
          return std::pow(rho * rho + rho_p * rho_p - 2 * rho * rho_p * std::cos(th), -3);
        },
        0, 2 * pi, 25, 1e-14);
    CHECK(rel(angular_kernel_reduction(rho, rho_p), quad) < 1e-10);
  }
  CHECK_THROWS_AS(angular_kernel_reduction(1, 1), DomainError);
}

TEST_CASE("reduced coaxial integral") {
  const auto r = coaxial_reduced(1, 2, 1, tolerance(1e-9));
  CHECK(rel(r.value, -64 * pi / 81) < 1e-6);
  CHECK(r.unit_kind == UnitKind::energy_per_length);
  // Inner integral at x = 0: int_{b^2}^inf y^-3 dy = 1 / (2 b^4).
  const double inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double t) { return std::pow(4.0 / t, -3) * 4.0 / (t * t); }, 0, 1);
  CHECK(rel(inner, 1.0 / 32) < 1e-12);
  // Agrees with the 4D route within combined error bars.
  const auto full = energy_pair_2d(Disk{{0, 0}, 1}, ExteriorDisk{2}, unit, tolerance(1e-6));
  CHECK(std::abs(full.value - r.value) < 3 * (full.error_estimate + r.error_estimate));
}

TEST_CASE("brute force against the closed forms") {
  SUBCASE("eccentric") {
    const auto r = energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2}, unit, tolerance(1e-5));
    CHECK(rel(r.value, energy_eccentric(0.5, 2, 0.5, 1)) < 1e-3);
    CHECK(r.unit_kind == UnitKind::energy_per_length);
  }
  SUBCASE("concentric") {
    const auto r = energy_pair_2d(Disk{{0, 0}, 0.7}, ExteriorDisk{1.6}, unit, tolerance(1e-5));
    const double a2 = 0.49;
    const double b2 = 2.56;
    CHECK(rel(r.value, -16 * pi * a2 * b2 / (3 * std::pow(b2 - a2, 3))) < 1e-3);
  }
  SUBCASE("cylinder and plane") {
    const auto r = energy_pair_2d(Disk{{0, 0}, 1}, HalfPlane{2}, unit, tolerance(1e-5));
    CHECK(rel(r.value, energy_cyl_plane(1, 2, 1)) < 1e-3);
  }
  SUBCASE("two cylinders") {
    const auto r = energy_pair_2d(Disk{{0, 0}, 1}, Disk{{3, 0}, 1}, unit, tolerance(1e-5));
    CHECK(rel(r.value, energy_cyl_cyl(1, 1, 3, 1)) < 1e-3);
  }
  SUBCASE("sphere and plane") {
    const auto r = energy_pair_3d(Ball{{0, 0, 0}, 1}, HalfSpace{2}, unit, tolerance(1e-5));
    CHECK(rel(r.value, -4 * pi / 27) < 1e-3);
    CHECK(r.unit_kind == UnitKind::energy);
  }
  SUBCASE("sphere and slab approaches sphere and half-space") {
    const auto thick = energy_pair_3d(Ball{{0, 0, 0}, 1}, Slab{2, 50}, unit, tolerance(1e-5));
    CHECK(rel(thick.value, -4 * pi / 27) < 1e-3);
    const auto thin = energy_pair_3d(Ball{{0, 0, 0}, 1}, Slab{2, 0.5}, unit, tolerance(1e-5));
    CHECK(std::abs(thin.value) < std::abs(thick.value));
  }
}

TEST_CASE("force on the inner cylinder") {
  const auto f = force_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2}, unit, tolerance(1e-5));
  CHECK(rel(f.value, force_eccentric(0.5, 2, 0.5, 1)) < 1e-3);
  CHECK(f.value > 0.0);
}

TEST_CASE("two distant balls approach the point-particle limit") {
  const MaterialPair m(0.2, 0.3);
  const double v = 4 * pi / 3;
  const double s = 40;
  const auto r = energy_pair_3d(Ball{{0, 0, 0}, 1}, Ball{{0, 0, s}, 1}, m, tolerance(1e-5));
  const double point = -23 * 0.2 * 0.3 * v * v / (std::pow(4 * pi, 3) * std::pow(s, 7));
  CHECK(rel(r.value, point) < 0.05);
}

TEST_CASE("vacuum partners give zero without integrating") {
  const auto r = energy_pair_3d(Ball{{0, 0, 0}, 1}, HalfSpace{2}, MaterialPair(0.0, 0.5),
                                tolerance(1e-6));
  CHECK(r.value == 0.0);
  CHECK(r.evaluations_used == 0);
}

TEST_CASE("invalid pairings are rejected") {
  CHECK_THROWS_AS(energy_pair_2d(Disk{{0, 0}, 1}, Disk{{1.5, 0}, 1}, unit, tolerance(1e-4)),
                  GeometryError);
  CHECK_THROWS_AS(energy_pair_2d(Disk{{0, 0}, 1}, Disk{{2, 0}, 1}, unit, tolerance(1e-4)),
                  GeometryError);
  CHECK_THROWS_AS(energy_pair_2d(HalfPlane{0}, ExteriorDisk{3}, unit, tolerance(1e-4)),
                  GeometryError);
  CHECK_THROWS_AS(energy_pair_3d(HalfSpace{1}, Slab{-3, 1}, unit, tolerance(1e-4)),
                  GeometryError);
}

TEST_CASE("non-convergence carries the partial result") {
  QuadratureConfig cfg = tolerance(1e-12);
  cfg.max_evaluations = 2000;
  try {
    (void)energy_pair_2d(Disk{{0, 0}, 1}, Disk{{2.2, 0}, 1}, unit, cfg);
    FAIL("expected NotConvergedError");
  } catch (const NotConvergedError& e) {
    CHECK(e.partial().evaluations_used <= 2000);
    CHECK(e.partial().value < 0.0);
    CHECK(e.partial().error_estimate > 0.0);
  }
}

TEST_CASE("fixed configuration gives bit-identical results") {
  for (Method m : {Method::adaptive, Method::quasi_random, Method::monte_carlo}) {
    QuadratureConfig cfg = tolerance(m == Method::monte_carlo ? 1e-2 : 1e-4);
    cfg.method = m;
    const auto a = energy_pair_2d(Disk{{0.3, 0}, 0.5}, ExteriorDisk{2}, unit, cfg);
    const auto b = energy_pair_2d(Disk{{0.3, 0}, 0.5}, ExteriorDisk{2}, unit, cfg);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations_used == b.evaluations_used);
  }
}

TEST_CASE("regulated self-energy by quadrature") {
  CHECK(rel(self_energy_integral_regulated(1, 1, 0.0, tolerance(1e-10)).value, -40.0 / 9) < 1e-8);
  CHECK(rel(self_energy_integral_regulated(1, 1, 0.5, tolerance(1e-10)).value, -12.8) < 1e-8);
  CHECK(rel(self_energy_integral_regulated(0.7, 2, -1.0, tolerance(1e-10)).value,
            self_energy_regulated(0.7, 2, RegulatorExponent(-1.0))) < 1e-8);
  CHECK_THROWS_AS(self_energy_integral_regulated(1, 1, 1.0, tolerance(1e-6)), DomainError);
}

TEST_CASE("finite cylinder segments approach the per-length result") {
  // Two parallel segments of radius 0.5 with axes 2 apart. Losing the
  // partners beyond each end makes |E_3D / L| fall short of |E_2D|. The
  // shortfall is an end effect, so it shrinks like 1/L.
  const double per_length = energy_cyl_cyl(0.5, 0.5, 2.0, unit.n());
  double previous = INFINITY;
  std::vector<double> scaled;
  for (double length : {2.0, 4.0, 8.0}) {
    const auto r = energy_pair_3d(CylinderSegment{{0, 0, 0}, 0.5, length},
                                  CylinderSegment{{2, 0, 0}, 0.5, length}, unit, tolerance(1e-3));
    const double shortfall = 1.0 - r.value / (per_length * length);
    CHECK(shortfall > 0.0);
    CHECK(shortfall < previous);
    previous = shortfall;
    scaled.push_back(shortfall * length);
  }
  CHECK(previous < 0.1);
  CHECK(rel(scaled[2], scaled[1]) < 0.1);
}
