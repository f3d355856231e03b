#include "casimir/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double four_pi_cubed = 64.0 * pi * pi * pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

// e^{-U} (P + P' + P'' + P''' + P'''') for the damped polynomial; this is the
// exact tail beyond U.
double frequency_tail(double u) {
  const double p = frequency_integrand(u);
  const double p1 = 6.0 + 5.0 * u + 1.5 * u * u + 0.5 * u * u * u;
  const double p2 = 5.0 + 3.0 * u + 1.5 * u * u;
  const double p3 = 3.0 + 3.0 * u;
  const double p4 = 3.0;
  return std::exp(-u) * (p + p1 + p2 + p3 + p4);
}

}  // namespace

double coupling_n(double chi1, double chi2) {
  return 23.0 * chi1 * chi2 / (640.0 * pi * pi);
}

MaterialPair::MaterialPair(double chi1, double chi2)
    : chi1_(chi1), chi2_(chi2), n_(coupling_n(chi1, chi2)) {
  require_finite(chi1, "chi1");
  require_finite(chi2, "chi2");
}

MaterialPair MaterialPair::from_permittivities(double eps1, double eps2) {
  return MaterialPair(eps1 - 1.0, eps2 - 1.0);
}

MaterialPair MaterialPair::from_coupling(double n) {
  require_finite(n, "n");
  const double chi = std::sqrt(std::abs(n) * 640.0 * pi * pi / 23.0);
  return MaterialPair(chi, n < 0 ? -chi : chi);
}

KernelPoint::KernelPoint(double separation, double zeta)
    : separation_(separation), zeta_(zeta), t_(std::abs(zeta) * separation) {
  if (!(separation > 0.0)) throw DomainError("kernel separation must be > 0");
  require_finite(zeta, "zeta");
}

double scalar_green(double r_sep, double zeta) {
  const KernelPoint p(r_sep, zeta);
  return std::exp(-p.t()) / (4.0 * pi * p.separation());
}

double dyadic_component(const Vec3& r, const Vec3& r_prime, double zeta, std::size_t i,
                        std::size_t j) {
  if (i > 2 || j > 2) throw DomainError("dyadic axis index must be 0, 1 or 2");
  const Vec3 d{r[0] - r_prime[0], r[1] - r_prime[1], r[2] - r_prime[2]};
  const double sep = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(sep > 0.0)) throw DomainError("dyadic_component: coincident points");
  const KernelPoint p(sep, zeta);
  const double t = p.t();
  const double diagonal = (i == j) ? -(1.0 + t + t * t) : 0.0;
  const double radial = d[i] * d[j] / (sep * sep) * (3.0 + 3.0 * t + t * t);
  return (diagonal + radial) * std::exp(-t) / (4.0 * pi * sep * sep * sep);
}

double contraction_polynomial(double t) {
  if (!(t >= 0.0)) throw DomainError("contraction_polynomial: t must be >= 0");
  return (6.0 + t * (12.0 + t * (10.0 + t * (4.0 + 2.0 * t)))) * std::exp(-2.0 * t);
}

double frequency_integrand(double u) {
  return 6.0 + u * (6.0 + u * (2.5 + u * (0.5 + 0.125 * u)));
}

FrequencyIntegral frequency_integral() {
  constexpr double tail_target = 1e-14;
  double upper = 8.0;
  while (frequency_tail(upper) >= tail_target) upper += 8.0;

  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(
      [](double u) { return std::exp(-u) * frequency_integrand(u); }, 0.0, upper, 15, 1e-15,
      &err);
  const double residual = err + frequency_tail(upper);
  if (!std::isfinite(value) || residual > 1e-11) {
    throw NumericalError("frequency integral did not converge", value, residual);
  }
  return {value, residual, upper};
}

double pair_kernel_3d(double s, const MaterialPair& mat) {
  if (!(s > 0.0)) throw DomainError("pair_kernel_3d: separation must be > 0");
  return -23.0 * mat.chi1() * mat.chi2() / (four_pi_cubed * std::pow(s, 7));
}

double pair_kernel_2d(double s, const MaterialPair& mat) {
  if (!(s > 0.0)) throw DomainError("pair_kernel_2d: separation must be > 0");
  const double s2 = s * s;
  return -(32.0 * mat.n()) / (3.0 * pi) / (s2 * s2 * s2);
}

double pair_kernel_2d_slope(double s, const MaterialPair& mat) {
  if (!(s > 0.0)) throw DomainError("pair_kernel_2d_slope: separation must be > 0");
  return 64.0 * mat.n() / (pi * std::pow(s, 7));
}

}  // namespace casimir
