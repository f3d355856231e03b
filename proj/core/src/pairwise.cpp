#include "casimir/pairwise.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "casimir/closed_forms.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <std::size_t D>
struct Sample {
  std::array<double, D> point;
  double jacobian;
};

// r = r_min t^{-1/4}; returns {r, dr/dt}.
std::pair<double, double> compactified_radius(double r_min, double t) {
  const double q = std::pow(t, -0.25);
  return {r_min * q, 0.25 * r_min * q / t};
}

Sample<2> map_bounded(const Region2D& region, std::span<const double> u) {
  return std::visit(
      overloaded{
          [&](const Disk& d) {
            const double rho = d.radius * u[0];
            const double theta = two_pi * u[1];
            return Sample<2>{{d.center[0] + rho * std::cos(theta), d.center[1] + rho * std::sin(theta)},
                             two_pi * d.radius * rho};
          },
          [&](const Annulus& a) {
            const double width = a.r_out - a.r_in;
            const double rho = a.r_in + width * u[0];
            const double theta = two_pi * u[1];
            return Sample<2>{{rho * std::cos(theta), rho * std::sin(theta)}, two_pi * width * rho};
          },
          [&](const auto&) -> Sample<2> { throw GeometryError("region is unbounded"); },
      },
      region);
}

// Polar coordinates around the anchor, which lies outside the region.
Sample<2> map_anchored(const Region2D& region, std::span<const double> u, const Vec2& p) {
  const double t = u[1];
  if (!(t > 0.0)) return {{0.0, 0.0}, 0.0};
  return std::visit(
      overloaded{
          [&](const ExteriorDisk& e) {
            const double psi = two_pi * u[0];
            const double ex = std::cos(psi);
            const double ey = std::sin(psi);
            const double proj = p[0] * ex + p[1] * ey;
            const double inside = e.radius * e.radius - (p[0] * p[0] + p[1] * p[1]);
            const double root = std::sqrt(proj * proj + inside);
            // Positive root of |p + r e| = radius, in cancellation-free form.
            const double r_min = proj > 0.0 ? inside / (proj + root) : root - proj;
            const auto [r, drdt] = compactified_radius(r_min, t);
            return Sample<2>{{p[0] + r * ex, p[1] + r * ey}, two_pi * r * drdt};
          },
          [&](const HalfPlane& h) {
            const double psi = pi * (u[0] - 0.5);
            const double c = std::cos(psi);
            if (!(c > 0.0)) return Sample<2>{{0.0, 0.0}, 0.0};
            const double r_min = (h.offset - p[0]) / c;
            const auto [r, drdt] = compactified_radius(r_min, t);
            return Sample<2>{{p[0] + r * c, p[1] + r * std::sin(psi)}, pi * r * drdt};
          },
          [&](const auto& bounded) { return map_bounded(bounded, u); },
      },
      region);
}

std::array<double, 3> direction(double mu, double phi) {
  const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  return {s * std::cos(phi), s * std::sin(phi), mu};
}

Sample<3> map_bounded(const Region3D& region, std::span<const double> u) {
  return std::visit(
      overloaded{
          [&](const Ball& b) {
            const double r = b.radius * u[0];
            const auto e = direction(2.0 * u[1] - 1.0, two_pi * u[2]);
            return Sample<3>{{b.center[0] + r * e[0], b.center[1] + r * e[1], b.center[2] + r * e[2]},
                             4.0 * pi * b.radius * r * r};
          },
          [&](const CylinderSegment& c) {
            const double rho = c.radius * u[0];
            const double theta = two_pi * u[1];
            return Sample<3>{{c.center[0] + rho * std::cos(theta), c.center[1] + rho * std::sin(theta),
                              c.center[2] + c.length * (u[2] - 0.5)},
                             two_pi * c.radius * rho * c.length};
          },
          [&](const auto&) -> Sample<3> { throw GeometryError("region is unbounded"); },
      },
      region);
}

// Spherical coordinates around the anchor: u[0] = cos of the angle to the
// face normal, u[1] azimuth, u[2] compactified radius.
Sample<3> map_anchored(const Region3D& region, std::span<const double> u, const Vec3& p) {
  const double mu = u[0];
  if (!(mu > 0.0)) return {{0.0, 0.0, 0.0}, 0.0};
  const auto along = [&](double near, double t_min, double side) {
    const double t = t_min + (1.0 - t_min) * u[2];
    if (!(t > 0.0)) return Sample<3>{{0.0, 0.0, 0.0}, 0.0};
    const auto [r, drdt] = compactified_radius(near / mu, t);
    auto e = direction(mu, two_pi * u[1]);
    e[2] *= side;
    return Sample<3>{{p[0] + r * e[0], p[1] + r * e[1], p[2] + r * e[2]},
                     two_pi * r * r * drdt * (1.0 - t_min)};
  };
  return std::visit(overloaded{
                        [&](const HalfSpace& h) { return along(h.offset - p[2], 0.0, 1.0); },
                        [&](const Slab& s) {
                          const bool below = p[2] < s.z0;
                          const double near = below ? s.z0 - p[2] : p[2] - s.z0 - s.thickness;
                          const double ratio = near / (near + s.thickness);
                          return along(near, ratio * ratio * ratio * ratio, below ? 1.0 : -1.0);
                        },
                        [&](const auto& bounded) { return map_bounded(bounded, u); },
                    },
                    region);
}

template <class Region>
void check_disjoint(const Region& r1, const Region& r2) {
  const Separation sep = min_separation(r1, r2);
  if (sep.overlap) throw GeometryError("bodies overlap");
  const double scale = std::max({length_scale(r1), length_scale(r2), 1e-300});
  if (!(sep.distance > contact_margin * scale)) {
    throw GeometryError("bodies touch (minimum separation " + std::to_string(sep.distance) + ")");
  }
  if (!is_bounded(r1) && !is_bounded(r2)) {
    throw GeometryError("at least one body must be bounded for a finite pair energy");
  }
}

EnergyResult finish(const CubatureResult& c, UnitKind unit) {
  EnergyResult out{c.value, unit, c.error, c.evaluations, c.method_used};
  if (!c.converged) throw NotConvergedError(out);
  return out;
}

// Integrates kernel(p1 - p2) over region1 x region2. The bounded region (if
// only one is bounded) is the outer variable set; `swapped` reports whether
// the order was exchanged.
template <std::size_t D, class Region, class Kernel>
CubatureResult pair_integral(const Region& region1, const Region& region2, Kernel&& kernel,
                             const QuadratureConfig& cfg, bool& swapped) {
  swapped = !is_bounded(region1);
  const Region& outer = swapped ? region2 : region1;
  const Region& inner = swapped ? region1 : region2;
  const auto integrand = [&](std::span<const double> u) {
    const auto s1 = map_bounded(outer, u.first(D));
    const auto s2 = map_anchored(inner, u.subspan(D, D), s1.point);
    if (s2.jacobian == 0.0) return 0.0;
    std::array<double, D> delta{};
    for (std::size_t i = 0; i < D; ++i) delta[i] = s1.point[i] - s2.point[i];
    return kernel(delta) * s1.jacobian * s2.jacobian;
  };
  return integrate_unit_cube(integrand, 2 * D, cfg);
}

template <std::size_t D>
double norm(const std::array<double, D>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

NotConvergedError::NotConvergedError(const EnergyResult& partial)
    : NumericalError("integration did not reach tolerance within " +
                         std::to_string(partial.evaluations_used) + " evaluations",
                     partial.value, partial.error_estimate),
      partial_(partial) {}

EnergyResult energy_pair_3d(const Region3D& body1, const Region3D& body2, const MaterialPair& mat,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  check_disjoint(body1, body2);
  if (mat.chi1() == 0.0 || mat.chi2() == 0.0) return {0.0, UnitKind::energy, 0.0, 0, cfg.method};
  bool swapped = false;
  const auto c = pair_integral<3>(
      body1, body2, [&](const std::array<double, 3>& d) { return pair_kernel_3d(norm(d), mat); }, cfg,
      swapped);
  return finish(c, UnitKind::energy);
}

EnergyResult energy_pair_2d(const Region2D& region1, const Region2D& region2,
                            const MaterialPair& mat, const QuadratureConfig& cfg) {
  cfg.validate();
  check_disjoint(region1, region2);
  if (mat.chi1() == 0.0 || mat.chi2() == 0.0) {
    return {0.0, UnitKind::energy_per_length, 0.0, 0, cfg.method};
  }
  bool swapped = false;
  const auto c = pair_integral<2>(
      region1, region2, [&](const std::array<double, 2>& d) { return pair_kernel_2d(norm(d), mat); },
      cfg, swapped);
  return finish(c, UnitKind::energy_per_length);
}

EnergyResult force_pair_2d(const Region2D& region1, const Region2D& region2,
                           const MaterialPair& mat, const QuadratureConfig& cfg) {
  cfg.validate();
  check_disjoint(region1, region2);
  if (mat.chi1() == 0.0 || mat.chi2() == 0.0) {
    return {0.0, UnitKind::energy_per_length, 0.0, 0, cfg.method};
  }
  // -d/dx1 K(|p1 - p2|) = -K'(s) (x1 - x2) / s, with p1 the outer point.
  bool swapped = false;
  auto c = pair_integral<2>(
      region1, region2,
      [&](const std::array<double, 2>& d) {
        const double s = norm(d);
        return -pair_kernel_2d_slope(s, mat) * d[0] / s;
      },
      cfg, swapped);
  if (swapped) c.value = -c.value;
  return finish(c, UnitKind::energy_per_length);
}

double angular_kernel_reduction(double rho, double rho_prime) {
  if (!(rho >= 0.0) || !(rho_prime >= 0.0) || !std::isfinite(rho) || !std::isfinite(rho_prime)) {
    throw DomainError("angular_kernel_reduction: radii must be finite and >= 0");
  }
  if (rho == rho_prime) throw DomainError("angular_kernel_reduction: equal radii are singular");
  const double x = rho * rho;
  const double y = rho_prime * rho_prime;
  const double gap = std::abs(y - x);
  return two_pi * (x * x + y * y + 4.0 * x * y) / (gap * gap * gap * gap * gap);
}

EnergyResult coaxial_reduced(double a, double b, double n, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0) || !(b > a)) throw DomainError("coaxial_reduced requires 0 < a < b");
  const double a2 = a * a;
  const double b2 = b * b;
  // x = a^2 u0 and y = b^2 / u1.
  const auto integrand = [&](std::span<const double> u) {
    if (!(u[1] > 0.0)) return 0.0;
    const double x = a2 * u[0];
    const double y = b2 / u[1];
    const double gap = y - x;
    const double g2 = gap * gap;
    return (x * x + y * y + 4.0 * x * y) / (g2 * g2 * gap) * a2 * b2 / (u[1] * u[1]);
  };
  auto c = integrate_unit_cube(integrand, 2, cfg);
  const double scale = -(32.0 * pi * n / 3.0);
  c.value *= scale;
  c.error *= std::abs(scale);
  return finish(c, UnitKind::energy_per_length);
}

EnergyResult self_energy_integral_regulated(double a, double n_self, double beta,
                                            const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0)) throw DomainError("self-energy: radius must be positive");
  if (!(beta < 1.0)) {
    throw DomainError("self-energy quadrature requires beta < 1; continue with the closed form");
  }
  const double tol = std::clamp(0.01 * cfg.rel_tol, 1e-15, 1e-6);
  std::size_t evaluations = 0;
  boost::math::quadrature::tanh_sinh<double> integrator;

  double x_err = 0.0;
  const double x_part = integrator.integrate(
      [&](double x) {
        ++evaluations;
        return std::pow(x, 3.0 - beta);
      },
      0.0, a * a, tol, &x_err);
  double u_err = 0.0;
  const double u_part = integrator.integrate(
      [&](double u) {
        ++evaluations;
        return std::pow(u, 2.0 - beta) - 6.0 * std::pow(u, 1.0 - beta) + 6.0 * std::pow(u, -beta);
      },
      0.0, 1.0, tol, &u_err);

  const double scale = -(16.0 * n_self / 3.0);
  const double value = scale * x_part * u_part;
  const double rel = std::abs(x_err / x_part) + std::abs(u_err / u_part);
  const double err = std::max(std::abs(value) * rel,
                              50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  CubatureResult c{value, err, evaluations, std::isfinite(value), Method::adaptive};
  c.converged = c.converged && err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  return finish(c, UnitKind::energy_per_length);
}

EnergyResult integrate_geometry(const Geometry& g, const MaterialPair& mat,
                                const QuadratureConfig& cfg) {
  validate(g);
  return std::visit(
      overloaded{
          [&](const ParallelCylinders& c) {
            return energy_pair_2d(Disk{{0.0, 0.0}, c.a}, Disk{{c.r_axes, 0.0}, c.b}, mat, cfg);
          },
          [&](const CylinderPlane& c) {
            return energy_pair_2d(Disk{{0.0, 0.0}, c.a}, HalfPlane{c.z}, mat, cfg);
          },
          [&](const SpherePlane& c) {
            return energy_pair_3d(Ball{{0.0, 0.0, 0.0}, c.a}, HalfSpace{c.z}, mat, cfg);
          },
          [&](const Coaxial& c) {
            return energy_pair_2d(Disk{{0.0, 0.0}, c.a}, ExteriorDisk{c.b}, mat, cfg);
          },
          [&](const Eccentric& c) {
            return energy_pair_2d(Disk{{c.offset, 0.0}, c.a}, ExteriorDisk{c.b}, mat, cfg);
          },
          [&](const SelfCylinder& c) {
            if (!c.beta) {
              throw DomainError("self-energy integral diverges; set beta < 1 to integrate the regulated form");
            }
            return self_energy_integral_regulated(c.a, mat.n(), *c.beta, cfg);
          },
          [&](const ParallelPlates& c) {
            cfg.validate();
            std::size_t evaluations = 0;
            boost::math::quadrature::exp_sinh<double> integrator;
            double err = 0.0;
            const double value = integrator.integrate(
                [&](double z) {
                  ++evaluations;
                  return slab_element(z, mat.n());
                },
                c.d, std::numeric_limits<double>::infinity(), std::clamp(0.01 * cfg.rel_tol, 1e-15, 1e-6),
                &err);
            err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
            CubatureResult r{value, err, evaluations, std::isfinite(value), Method::adaptive};
            r.converged = r.converged && err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
            return finish(r, UnitKind::energy_per_area);
          },
      },
      g);
}

std::optional<EnergyResult> integrate_force(const Geometry& g, const MaterialPair& mat,
                                            const QuadratureConfig& cfg) {
  validate(g);
  const auto* e = std::get_if<Eccentric>(&g);
  if (!e) return std::nullopt;
  // The force vanishes by symmetry at zero offset; the quadrature would only
  // return rounding noise there.
  if (e->offset == 0.0) return EnergyResult{0.0, UnitKind::energy_per_length, 0.0, 0, cfg.method};
  return force_pair_2d(Disk{{e->offset, 0.0}, e->a}, ExteriorDisk{e->b}, mat, cfg);
}

}  // namespace casimir
