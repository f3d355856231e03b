#include "casimir/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

// x^{5/2} for x > 0 as x^2 sqrt(x), which keeps perfect squares exact.
double pow_five_halves(double x) { return x * x * std::sqrt(x); }

void check_eccentric(double a, double b, double offset) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(offset >= 0.0)) throw DomainError("eccentric: offset must be >= 0");
  if (!(offset + a < b)) {
    throw DomainError("eccentric: inner cylinder touches or crosses the cavity wall (offset + a >= b)");
  }
}

}  // namespace

double energy_cyl_cyl(double a, double b, double r_axes, double n) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(r_axes > a + b)) {
    throw DomainError("cylinder-cylinder: cylinders touch or overlap (r_axes <= a + b)");
  }
  const double r2 = r_axes * r_axes;
  const double sum = (a + b) / r_axes;
  const double diff = (a - b) / r_axes;
  const double skew = (a * a - b * b) / r2;
  const double numerator = 1.0 - 0.5 * (a * a + b * b) / r2 - 0.5 * skew * skew;
  const double denominator = pow_five_halves((1.0 - sum * sum) * (1.0 - diff * diff));
  return -(32.0 * pi * n / 3.0) * (a * a * b * b) / (r2 * r2 * r2) * numerator / denominator;
}

double energy_cyl_plane(double a, double z, double n) {
  require_positive(a, "a");
  if (!(z > a)) throw DomainError("cylinder-plane: cylinder intersects the plane (z <= a)");
  const double q = a * a / (z * z);
  return -n * pi * a * a / (z * z * z * z) / pow_five_halves(1.0 - q);
}

double energy_sphere_plane(double a, double z, double n) {
  require_positive(a, "a");
  if (!(z > a)) throw DomainError("sphere-plane: sphere intersects the plane (z <= a)");
  const double volume = 4.0 * pi * a * a * a / 3.0;
  const double q = 1.0 - a * a / (z * z);
  return -n * volume / (z * z * z * z) / (q * q);
}

double slab_element(double z, double n) {
  require_positive(z, "z");
  return -n / (z * z * z * z);
}

double energy_coaxial(double a, double b, double n) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(a < b)) throw DomainError("coaxial: inner radius must be smaller than cavity radius");
  // Written in the same reduced variables as energy_eccentric so the two
  // agree to rounding at zero offset.
  const double r = a * a / (b * b);
  const double gap = 1.0 - r;
  return -(16.0 * pi * n / 3.0) * (a * a / (b * b * b * b)) / (gap * gap * gap);
}

double energy_plates_dilute(double d, double n) {
  require_positive(d, "d");
  return -n / (3.0 * d * d * d);
}

double energy_eccentric(double a, double b, double offset, double n) {
  check_eccentric(a, b, offset);
  const double r = a * a / (b * b);
  const double s = offset * offset / (b * b);
  const double gap = 1.0 - r;
  const double numerator = gap * gap + (1.0 + r) * s - 2.0 * s * s;
  const double denominator = gap * gap + s * s - 2.0 * (1.0 + r) * s;
  return -(16.0 * pi * n / 3.0) * (a * a / (b * b * b * b)) * numerator /
         pow_five_halves(denominator);
}

double binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) return 0.0;
  if (n > 1000) throw DomainError("binomial: order above 1000 would lose precision");
  r = std::min(r, n - r);
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  return c;
}

double eccentric_series_coefficient(int k, int m) {
  const double mp1 = static_cast<double>(m + 1);
  return 0.5 * mp1 * mp1 * binomial(k + m + 1, m + 1) * binomial(k + m + 2, m + 1);
}

SeriesResult eccentric_series(double a, double b, double offset, double n, int n_max, int m_max) {
  if (n_max < 0 || m_max < 0) throw DomainError("eccentric_series: truncation orders must be >= 0");
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(a < b) || !(offset >= 0.0) || !(offset < b)) {
    throw DomainError("eccentric_series: requires a < b and 0 <= offset < b");
  }
  const double r = a * a / (b * b);
  const double s = offset * offset / (b * b);

  double sum = 0.0;
  double edge = 0.0;
  double r_pow = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    double term_pow = r_pow;
    for (int m = 0; m <= m_max; ++m) {
      const double term = term_pow * eccentric_series_coefficient(k, m);
      sum += term;
      if (k == n_max || m == m_max) edge += term;
      term_pow *= s;
    }
    r_pow *= r;
  }

  SeriesResult out{};
  out.value = -(16.0 * pi * n * a * a / (3.0 * b * b * b * b)) * sum;
  out.convergence_ratio = (a + offset) * (a + offset) / (b * b);
  out.truncation_estimate = sum > 0.0 ? edge / sum : 0.0;
  out.slow_convergence = out.truncation_estimate > 1e-6 || out.convergence_ratio > 0.8;
  return out;
}

double force_eccentric(double a, double b, double offset, double n) {
  check_eccentric(a, b, offset);
  // E(u) = -(16 pi n / 3) a^2 b^2 P(u) / D(u)^{5/2} with u = offset^2 and
  //   P = (b^2 - a^2)^2 + (a^2 + b^2) u - 2 u^2,
  //   D = (b^2 - a^2)^2 - 2 (a^2 + b^2) u + u^2.
  // F = -dE/d(offset) = -2 offset dE/du.
  const double a2 = a * a;
  const double b2 = b * b;
  const double u = offset * offset;
  const double c = (b2 - a2) * (b2 - a2);
  const double p = c + (a2 + b2) * u - 2.0 * u * u;
  const double dp = (a2 + b2) - 4.0 * u;
  const double d = c - 2.0 * (a2 + b2) * u + u * u;
  const double dd = -2.0 * (a2 + b2) + 2.0 * u;
  const double bracket = dp * d - 2.5 * p * dd;
  return (32.0 * pi * n / 3.0) * a2 * b2 * offset * bracket / (d * d * d * std::sqrt(d));
}

double continue_cyl_cyl_to_contained(double a, double b, double r_axes, double n) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(r_axes >= 0.0)) throw DomainError("continuation: r_axes must be >= 0");
  if (!(r_axes + a < b)) {
    if (r_axes > a + b) {
      throw DomainError("continuation: configuration is external; use energy_cyl_cyl");
    }
    throw DomainError("continuation: bodies touch or overlap (b - a <= r_axes <= a + b)");
  }
  // Multiply the numerator of the external formula by R^4 and the bracket in
  // the denominator by R^4 (its 5/2 power by R^10), cancelling the R^-6
  // prefactor. In the contained band both factors of the bracket are
  // negative, so the product stays positive and real; the energy sign is
  // restored by taking the negative square root.
  const double u = r_axes * r_axes;
  const double numerator = u * u - 0.5 * (a * a + b * b) * u - 0.5 * (a * a - b * b) * (a * a - b * b);
  const double bracket = (u - (a + b) * (a + b)) * (u - (a - b) * (a - b));
  constexpr double root_branch = -1.0;
  return -(32.0 * pi * n / 3.0) * (a * a * b * b) * numerator /
         (root_branch * pow_five_halves(bracket));
}

RegulatorExponent::RegulatorExponent(double beta) : beta_(beta) {
  if (!std::isfinite(beta)) throw DomainError("regulator exponent must be finite");
  for (const double pole : {1.0, 2.0, 3.0}) {
    if (beta == pole) {
      throw DomainError("regulator exponent beta = " + std::to_string(static_cast<int>(pole)) +
                        " is a pole of the regulated self-energy");
    }
  }
}

double self_energy_regulated(double a, double n_self, RegulatorExponent beta) {
  require_positive(a, "a");
  const double bt = beta.value();
  // + 0.0 turns the -0.0 produced at beta = 5 into +0.0.
  return -(16.0 * n_self / 3.0) * std::pow(a * a, 4.0 - bt) * (5.0 - bt) /
             ((1.0 - bt) * (2.0 - bt) * (3.0 - bt)) +
         0.0;
}

double self_energy_dilute_cylinder(double a, double n_self) {
  require_positive(a, "a");
  (void)n_self;
  return 0.0;
}

}  // namespace casimir
