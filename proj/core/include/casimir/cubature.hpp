#pragma once

// Integration over the unit hypercube [0, 1]^dim.
//
// The adaptive method is a Genz-Malik degree-7 rule with an embedded
// degree-5 rule for the error estimate; regions with the largest estimated
// error are bisected along the coordinate with the largest fourth
// difference. The quasi-random method uses randomly shifted Sobol points
// (the spread over shifts gives the error bar) and the Monte Carlo method a
// seeded 64-bit Mersenne twister. All three are deterministic for a fixed
// QuadratureConfig.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

namespace casimir {

enum class Method { adaptive, quasi_random, monte_carlo };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 4'000'000;
  Method method = Method::adaptive;
  std::uint64_t seed = 20090707;

  /// Throws DomainError unless some tolerance is positive and the budget is
  /// at least 1000 evaluations.
  void validate() const;
};

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  Method method_used = Method::adaptive;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Adaptive runs in dim >= 6 that exhaust the budget are repeated with the
/// quasi-random method and the result with the smaller error is returned.
/// Never throws on non-convergence; check `converged`.
CubatureResult integrate_unit_cube(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg);

CubatureResult integrate_adaptive(const Integrand& f, std::size_t dim, const QuadratureConfig& cfg);
CubatureResult integrate_quasi_random(const Integrand& f, std::size_t dim,
                                      const QuadratureConfig& cfg);
CubatureResult integrate_monte_carlo(const Integrand& f, std::size_t dim,
                                     const QuadratureConfig& cfg);

/// Number of integrand evaluations per region of the Genz-Malik rule.
std::size_t genz_malik_points(std::size_t dim);

}  // namespace casimir
