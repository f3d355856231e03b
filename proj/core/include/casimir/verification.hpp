#pragma once

// Self-check suite: every closed form against an independent route
// (finite differences, quadrature, brute-force pair summation, series).

#include <string>
#include <vector>

namespace casimir::verify {

enum class Profile { fast, thorough };

struct Check {
  int criterion;            // 1..10
  std::string name;
  bool passed;
  double measured;          // deviation, fraction, or value, per `metric`
  double threshold;
  std::string metric;
  double runtime_s;
  double runtime_budget_s;  // <= 0 when no budget applies
  std::string detail;
};

std::vector<Check> run_all(Profile profile);

/// Individual criteria, each returning one or more checks.
std::vector<Check> frequency_integral_checks(Profile profile);
std::vector<Check> dyadic_checks(Profile profile);
std::vector<Check> sphere_plane_checks(Profile profile);
std::vector<Check> coaxial_checks(Profile profile);
std::vector<Check> eccentric_checks(Profile profile);
std::vector<Check> continuation_checks(Profile profile);
std::vector<Check> limit_checks(Profile profile);
std::vector<Check> force_checks(Profile profile);
std::vector<Check> self_energy_checks(Profile profile);
std::vector<Check> determinism_checks(Profile profile);

/// Titles of the ten acceptance criteria, indexed 1..10 (index 0 unused).
const std::vector<std::string>& criterion_titles();

}  // namespace casimir::verify
