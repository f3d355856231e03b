#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/cubature.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

QuadratureConfig config(Method m, double rel_tol, std::size_t budget, std::uint64_t seed = 1) {
  QuadratureConfig cfg;
  cfg.method = m;
  cfg.rel_tol = rel_tol;
  cfg.max_evaluations = budget;
  cfg.seed = seed;
  return cfg;
}

// exp(-sum x_i) over the unit cube: (1 - 1/e)^dim.
double exp_integrand(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return std::exp(-s);
}

}  // namespace

TEST_CASE("method names and aliases") {
  for (Method m : {Method::adaptive, Method::quasi_random, Method::monte_carlo}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK(parse_method("qmc") == Method::quasi_random);
  CHECK(parse_method("mc") == Method::monte_carlo);
  CHECK(parse_method("adaptive-subdivision") == Method::adaptive);
  CHECK_FALSE(parse_method("simpson").has_value());
}

TEST_CASE("configuration is validated") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.abs_tol = 1e-9;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_evaluations = 999;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(integrate_adaptive(exp_integrand, 1, QuadratureConfig{}), DomainError);
}

TEST_CASE("Genz-Malik point count") {
  for (std::size_t d = 2; d <= 8; ++d) {
    CHECK(genz_malik_points(d) == (std::size_t{1} << d) + 2 * d * d + 2 * d + 1);
  }
}

TEST_CASE("degree-7 polynomials are integrated exactly") {
  std::mt19937_64 rng(5);
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    for (int trial = 0; trial < 10; ++trial) {
      // Random monomial of total degree <= 7.
      std::vector<int> powers(dim, 0);
      int left = 7;
      for (std::size_t i = 0; i < dim && left > 0; ++i) {
        powers[i] = static_cast<int>(rng() % (left + 1));
        left -= powers[i];
      }
      double exact = 1.0;
      for (int p : powers) exact /= (p + 1);
      auto f = [&](std::span<const double> x) {
        double v = 1.0;
        for (std::size_t i = 0; i < dim; ++i) v *= std::pow(x[i], powers[i]);
        return v;
      };
      const auto r = integrate_adaptive(f, dim, config(Method::adaptive, 1e-12, 100000));
      CHECK(std::abs(r.value - exact) < 1e-14);
    }
  }
  // A degree-5 integrand is exact in both embedded rules, so the first
  // region already reports zero error.
  const auto r = integrate_adaptive(
      [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1] * x[1] + 1.0; }, 3,
      config(Method::adaptive, 1e-10, 1000));
  CHECK(r.converged);
  CHECK(r.evaluations == genz_malik_points(3));
  CHECK(r.value == doctest::Approx(1.0 + 1.0 / 12).epsilon(1e-15));
}

TEST_CASE("all methods reach a smooth 4D integral") {
  const double exact = std::pow(1 - std::exp(-1.0), 4);
  for (Method m : {Method::adaptive, Method::quasi_random, Method::monte_carlo}) {
    const double tol = m == Method::monte_carlo ? 2e-3 : m == Method::quasi_random ? 1e-5 : 1e-6;
    const auto r = integrate_unit_cube(exp_integrand, 4, config(m, tol, 4'000'000));
    INFO(method_name(m));
    CHECK(r.converged);
    CHECK(r.method_used == m);
    CHECK(std::abs(r.value - exact) < 5 * std::max(r.error, 1e-15));
    CHECK(std::abs(r.value - exact) / exact < 10 * tol);
  }
}

TEST_CASE("runs are deterministic for a fixed configuration") {
  for (Method m : {Method::adaptive, Method::quasi_random, Method::monte_carlo}) {
    const auto cfg = config(m, 1e-4, 200000, 99);
    const auto a = integrate_unit_cube(exp_integrand, 5, cfg);
    const auto b = integrate_unit_cube(exp_integrand, 5, cfg);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.evaluations == b.evaluations);
  }
  const auto s1 = integrate_monte_carlo(exp_integrand, 3, config(Method::monte_carlo, 1e-9, 5000, 1));
  const auto s2 = integrate_monte_carlo(exp_integrand, 3, config(Method::monte_carlo, 1e-9, 5000, 2));
  CHECK(s1.value != s2.value);
}

TEST_CASE("doubling the budget never increases the adaptive error estimate") {
  // A near-singular peak keeps the rule refining for a while.
  auto peaked = [](std::span<const double> x) {
    const double dx = x[0] - 0.3;
    const double dy = x[1] - 0.7;
    return 1.0 / std::pow(dx * dx + dy * dy + 1e-4, 1.5);
  };
  double previous = INFINITY;
  for (std::size_t budget = 1000; budget <= 512000; budget *= 2) {
    const auto r = integrate_adaptive(peaked, 2, config(Method::adaptive, 1e-14, budget));
    CHECK(r.error <= previous);
    CHECK(r.evaluations <= budget);
    previous = r.error;
  }
}

TEST_CASE("an exhausted budget is reported, not hidden") {
  auto spiky = [](std::span<const double> x) { return 1.0 / std::sqrt(x[0] + 1e-12); };
  const auto r = integrate_adaptive(spiky, 2, config(Method::adaptive, 1e-13, 1000));
  CHECK_FALSE(r.converged);
  CHECK(r.error > 0.0);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("six-dimensional adaptive runs fall back to quasi-random points") {
  // Rough enough that Genz-Malik cannot finish on this budget.
  auto rough = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v - 0.41);
    return s;
  };
  const auto r = integrate_unit_cube(rough, 6, config(Method::adaptive, 1e-7, 20000));
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations > 20000);
  const auto pure = integrate_adaptive(rough, 6, config(Method::adaptive, 1e-7, 20000));
  CHECK(r.error <= pure.error);
}
