#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "casimir/errors.hpp"
#include "casimir/kernel.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Fourth-order central differences of the scalar Green's function, the
// Hessian in r plus the -zeta^2 delta_ij term.
double hessian_by_differences(const Vec3& r, const Vec3& rp, double zeta, int i, int j,
                              double h) {
  auto g = [&](double di, double dj) {
    Vec3 x = r;
    x[i] += di;
    x[j] += dj;
    return scalar_green(std::hypot(x[0] - rp[0], x[1] - rp[1], x[2] - rp[2]), zeta);
  };
  double d2 = 0.0;
  if (i == j) {
    d2 = (-g(2 * h, 0) + 16 * g(h, 0) - 30 * g(0, 0) + 16 * g(-h, 0) - g(-2 * h, 0)) /
         (12 * h * h);
    d2 -= zeta * zeta * g(0, 0);
  } else {
    auto mixed = [&](double s) {
      return (g(s, s) - g(s, -s) - g(-s, s) + g(-s, -s)) / (4 * s * s);
    };
    d2 = (4 * mixed(h) - mixed(2 * h)) / 3;  // Richardson step
  }
  return d2;
}

}  // namespace

TEST_CASE("coupling constant from the dielectric contrasts") {
  CHECK(coupling_n(0.0, 0.7) == 0.0);
  // 23 / (640 pi^2) and its 1e-2 multiple, from 30-digit arithmetic
  CHECK(rel(coupling_n(1.0, 1.0), 3.6412300371465137e-3) < 1e-15);
  CHECK(rel(coupling_n(0.1, 0.1), 3.6412300371465137e-5) < 1e-14);

  const MaterialPair m = MaterialPair::from_permittivities(1.3, 2.0);
  CHECK(m.chi1() == doctest::Approx(0.3));
  CHECK(m.chi2() == doctest::Approx(1.0));
  CHECK(m.n() == coupling_n(m.chi1(), m.chi2()));

  const MaterialPair back = MaterialPair::from_coupling(-2.5);
  CHECK(rel(back.n(), -2.5) < 1e-14);
  CHECK(back.chi2() < 0.0);
}

TEST_CASE("non-finite contrasts are rejected") {
  CHECK_THROWS_AS(MaterialPair(std::nan(""), 0.1), DomainError);
  CHECK_THROWS_AS(MaterialPair(0.1, INFINITY), DomainError);
}

TEST_CASE("kernel point uses |zeta|") {
  const KernelPoint p(2.0, -0.75);
  CHECK(p.t() == 1.5);
  CHECK_THROWS_AS(KernelPoint(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(KernelPoint(-1.0, 1.0), DomainError);
}

TEST_CASE("scalar Green's function") {
  CHECK(rel(scalar_green(1.0, 0.0), 1.0 / (4 * pi)) < 1e-15);
  CHECK(rel(scalar_green(1.0, 1.0), std::exp(-1.0) / (4 * pi)) < 1e-15);
  CHECK(rel(scalar_green(2.0, 0.5), std::exp(-1.0) / (8 * pi)) < 1e-15);
  CHECK(scalar_green(1.0, -1.0) == scalar_green(1.0, 1.0));
  CHECK_THROWS_AS(scalar_green(0.0, 1.0), DomainError);
}

TEST_CASE("dyadic components on an axis") {
  const Vec3 o{0, 0, 0};
  const Vec3 x{1, 0, 0};
  CHECK(rel(dyadic_component(x, o, 0.0, 0, 0), 1.0 / (2 * pi)) < 1e-15);
  CHECK(dyadic_component(x, o, 0.0, 0, 1) == 0.0);
  CHECK(dyadic_component(x, o, 0.0, 1, 1) == doctest::Approx(-1.0 / (4 * pi)));
  CHECK_THROWS_AS(dyadic_component(x, x, 1.0, 0, 0), DomainError);
  CHECK_THROWS_AS(dyadic_component(x, o, 1.0, 3, 0), DomainError);
}

TEST_CASE("dyadic components match finite differences of G0") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> len(0.5, 5.0);
  std::uniform_real_distribution<double> freq(-2.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec3 dir{u(rng), u(rng), u(rng)};
    const double norm = std::hypot(dir[0], dir[1], dir[2]);
    const double r_sep = len(rng);
    const Vec3 rp{u(rng), u(rng), u(rng)};
    const Vec3 r{rp[0] + r_sep * dir[0] / norm, rp[1] + r_sep * dir[1] / norm,
                 rp[2] + r_sep * dir[2] / norm};
    const double zeta = freq(rng);
    double scale = 0.0;
    double diff = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double exact = dyadic_component(r, rp, zeta, i, j);
        const double fd = hessian_by_differences(r, rp, zeta, i, j, 1e-3 * r_sep);
        scale = std::max(scale, std::abs(exact));
        diff = std::max(diff, std::abs(exact - fd));
      }
    }
    worst = std::max(worst, diff / scale);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("contraction polynomial equals the component sum") {
  CHECK(contraction_polynomial(0.0) == 6.0);
  CHECK(rel(contraction_polynomial(1.0), 34.0 * std::exp(-2.0)) < 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Vec3 r{u(rng), u(rng), u(rng)};
    const Vec3 rp{u(rng), u(rng), u(rng)};
    const double r_sep = std::hypot(r[0] - rp[0], r[1] - rp[1], r[2] - rp[2]);
    if (r_sep < 0.1) continue;
    const double zeta = u(rng);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double g = dyadic_component(r, rp, zeta, i, j);
        sum += g * g;
      }
    }
    const double scale = 4 * pi * std::pow(r_sep, 3);
    CHECK(rel(sum * scale * scale, contraction_polynomial(std::abs(zeta) * r_sep)) < 1e-10);
  }
}

TEST_CASE("frequency integral is 23") {
  const FrequencyIntegral f = frequency_integral();
  CHECK(std::abs(f.value - 23.0) < 1e-10);
  CHECK(f.error_estimate < 1e-10);
  CHECK(frequency_integrand(0.0) == 6.0);

  // Independent route: exp-sinh over [0, inf).
  boost::math::quadrature::exp_sinh<double> es;
  auto damped = [](double u) { return u > 700 ? 0.0 : std::exp(-u) * frequency_integrand(u); };
  CHECK(std::abs(es.integrate(damped) - 23.0) < 1e-10);

  // Truncating at 50 instead of 100 drops e^-50 (P + P' + ... + P''''),
  // about 1.8e-16 and far below the 1e-10 target.
  const double u = 50.0;
  const double exact_tail =
      std::exp(-u) * ((6 + 6 * u + 2.5 * u * u + 0.5 * u * u * u + 0.125 * u * u * u * u) +
                      (6 + 5 * u + 1.5 * u * u + 0.5 * u * u * u) + (5 + 3 * u + 1.5 * u * u) +
                      (3 + 3 * u) + 3);
  const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(damped, 50.0,
                                                                                  100.0);
  CHECK(rel(tail, exact_tail) < 1e-8);
  CHECK(tail < 1e-15);
}

TEST_CASE("3D pair kernel") {
  const MaterialPair vacuum(0.0, 0.3);
  CHECK(pair_kernel_3d(1.0, vacuum) == 0.0);

  const double c = std::sqrt(std::pow(4 * pi, 3) / 23.0);
  CHECK(rel(pair_kernel_3d(1.0, MaterialPair(c, c)), -1.0) < 1e-14);

  const MaterialPair m(0.2, 0.4);
  CHECK(rel(pair_kernel_3d(2.0, m), pair_kernel_3d(1.0, m) / 128.0) < 1e-15);
  CHECK(pair_kernel_3d(1.0, m) < 0.0);
  double prev = pair_kernel_3d(0.1, m);
  for (double s = 0.2; s < 10.0; s *= 1.3) {
    const double v = pair_kernel_3d(s, m);
    CHECK(v > prev);
    prev = v;
  }
  for (double lambda : {0.5, 3.0, 17.0}) {
    CHECK(rel(pair_kernel_3d(lambda * 1.7, m), pair_kernel_3d(1.7, m) * std::pow(lambda, -7)) <
          1e-14);
  }
  CHECK_THROWS_AS(pair_kernel_3d(0.0, m), DomainError);
}

TEST_CASE("2D kernel is the axial integral of the 3D kernel") {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double axial = ts.integrate([](double z) { return std::pow(1 + z * z, -3.5); },
                                    -std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::infinity());
  CHECK(rel(axial, 16.0 / 15.0) < 1e-12);

  const MaterialPair m(0.3, 0.2);
  for (double s = 0.1; s <= 10.0; s *= 1.5) {
    const double along = ts.integrate(
        [&](double z) { return pair_kernel_3d(std::hypot(s, z), m); },
        -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    CHECK(rel(along, pair_kernel_2d(s, m)) < 1e-8);
  }
  // -(23 chi1 chi2 / (4 pi)^3) (16/15) == -(32 / (3 pi)) n
  CHECK(rel(-23 * 0.3 * 0.2 / std::pow(4 * pi, 3) * 16 / 15,
            -32.0 / (3 * pi) * coupling_n(0.3, 0.2)) < 1e-15);
  CHECK(rel(pair_kernel_2d_slope(1.3, m), -6 * pair_kernel_2d(1.3, m) / 1.3) < 1e-14);
}
