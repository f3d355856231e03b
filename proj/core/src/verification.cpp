#include "casimir/verification.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "casimir/closed_forms.hpp"
#include "casimir/kernel.hpp"
#include "casimir/pairwise.hpp"

namespace casimir::verify {

namespace {

constexpr double pi = std::numbers::pi;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double rel_dev(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

std::int64_t ulp_distance(double x, double y) {
  auto key = [](double v) {
    const auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const std::int64_t d = key(x) - key(y);
  return d < 0 ? -d : d;
}

Check make(int criterion, std::string name, double measured, double threshold, std::string metric,
           double runtime, double budget, std::string detail = {}) {
  const bool within_budget = budget <= 0.0 || runtime < budget;
  return {criterion, std::move(name), measured <= threshold && within_budget, measured, threshold,
          std::move(metric), runtime, budget, std::move(detail)};
}

std::string fmt_pair(double got, double want) {
  std::ostringstream os;
  os.precision(12);
  os << "got " << got << ", expected " << want;
  return os.str();
}

QuadratureConfig brute_force_config(Profile p) {
  QuadratureConfig cfg;
  cfg.rel_tol = p == Profile::fast ? 1e-5 : 1e-7;
  cfg.max_evaluations = p == Profile::fast ? 4'000'000 : 40'000'000;
  return cfg;
}

// Second derivatives of G0 by central differences, minus zeta^2 delta_ij G0.
double dyadic_by_differences(const Vec3& r, const Vec3& rp, double zeta, std::size_t i,
                             std::size_t j, double h) {
  auto g = [&](double di, double dj) {
    Vec3 x = r;
    x[i] += di;
    x[j] += dj;
    const double sep = std::hypot(x[0] - rp[0], x[1] - rp[1], x[2] - rp[2]);
    return scalar_green(sep, zeta);
  };
  double second = 0.0;
  if (i == j) {
    Vec3 plus = r, minus = r;
    plus[i] += h;
    minus[i] -= h;
    auto at = [&](const Vec3& x) {
      return scalar_green(std::hypot(x[0] - rp[0], x[1] - rp[1], x[2] - rp[2]), zeta);
    };
    second = (at(plus) - 2.0 * at(r) + at(minus)) / (h * h);
    return second - zeta * zeta * at(r);
  }
  second = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
  return second;
}

}  // namespace

const std::vector<std::string>& criterion_titles() {
  static const std::vector<std::string> titles{
      "",
      "frequency integral equals 23",
      "dyadic components and contraction polynomial",
      "sphere-plane brute force",
      "coaxial brute force and reduced integral",
      "eccentric brute force and double series",
      "contained-branch continuation identity",
      "geometric limits",
      "eccentric force",
      "regulated self-energy",
      "determinism and error-estimate honesty",
  };
  return titles;
}

std::vector<Check> frequency_integral_checks(Profile) {
  Stopwatch sw;
  const auto r = frequency_integral();
  const double t = sw.seconds();
  return {make(1, "frequency integral", std::abs(r.value - 23.0), 1e-10, "abs deviation from 23", t,
               1e-3, fmt_pair(r.value, 23.0))};
}

std::vector<Check> dyadic_checks(Profile profile) {
  const int samples = profile == Profile::fast ? 100 : 1000;
  std::mt19937_64 rng(0xD1AD1C);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> sep(0.5, 5.0);
  std::uniform_real_distribution<double> freq(-2.0, 2.0);
  std::normal_distribution<double> gauss;

  Stopwatch sw;
  double worst_fd = 0.0;
  double worst_contraction = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec3 rp{coord(rng), coord(rng), coord(rng)};
    Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
    const double len = std::hypot(dir[0], dir[1], dir[2]);
    const double big_r = sep(rng);
    const Vec3 r{rp[0] + big_r * dir[0] / len, rp[1] + big_r * dir[1] / len,
                 rp[2] + big_r * dir[2] / len};
    const double zeta = freq(rng);

    double closed[3][3];
    double scale = 0.0;
    double contracted = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        closed[i][j] = dyadic_component(r, rp, zeta, i, j);
        scale = std::max(scale, std::abs(closed[i][j]));
        contracted += closed[i][j] * closed[i][j];
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double fd = dyadic_by_differences(r, rp, zeta, i, j, 1e-4 * big_r);
        worst_fd = std::max(worst_fd, std::abs(fd - closed[i][j]) / scale);
      }
    }
    const double r3 = 4.0 * pi * big_r * big_r * big_r;
    const double poly = contraction_polynomial(std::abs(zeta) * big_r);
    worst_contraction = std::max(worst_contraction, rel_dev(contracted * r3 * r3, poly));
  }
  const double t = sw.seconds();
  return {
      make(2, "dyadic vs finite differences", worst_fd, 1e-6, "max rel deviation (tensor max-norm)", t, 1.0),
      make(2, "contraction polynomial", worst_contraction, 1e-10, "max rel deviation", t, 1.0),
  };
}

std::vector<Check> sphere_plane_checks(Profile profile) {
  const auto mat = MaterialPair::from_coupling(1.0);
  const double exact = -4.0 * pi / 27.0;
  Stopwatch sw;
  const auto r = energy_pair_3d(Ball{{0, 0, 0}, 1.0}, HalfSpace{2.0}, mat, brute_force_config(profile));
  const double t = sw.seconds();
  return {make(3, "sphere-plane 6D brute force", rel_dev(r.value, exact), 1e-3, "rel deviation", t, 60.0,
               fmt_pair(r.value, exact)),
          make(3, "sphere-plane closed form", rel_dev(energy_sphere_plane(1, 2, 1), exact), 1e-14,
               "rel deviation", 0.0, 0.0)};
}

std::vector<Check> coaxial_checks(Profile profile) {
  const auto mat = MaterialPair::from_coupling(1.0);
  const double exact = -64.0 * pi / 81.0;
  std::vector<Check> out;
  {
    Stopwatch sw;
    const auto r = energy_pair_2d(Disk{{0, 0}, 1.0}, ExteriorDisk{2.0}, mat, brute_force_config(profile));
    const double t = sw.seconds();
    out.push_back(make(4, "coaxial 4D brute force", rel_dev(r.value, exact), 1e-3, "rel deviation", t,
                       30.0, fmt_pair(r.value, exact)));
  }
  {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    Stopwatch sw;
    const auto r = coaxial_reduced(1.0, 2.0, 1.0, cfg);
    const double t = sw.seconds();
    out.push_back(make(4, "coaxial reduced 2D integral", rel_dev(r.value, exact), 1e-6, "rel deviation",
                       t, 1.0, fmt_pair(r.value, exact)));
  }
  out.push_back(make(4, "coaxial closed form", rel_dev(energy_coaxial(1, 2, 1), exact), 1e-14,
                     "rel deviation", 0.0, 0.0));
  return out;
}

std::vector<Check> eccentric_checks(Profile profile) {
  const auto mat = MaterialPair::from_coupling(1.0);
  std::vector<Check> out;
  {
    const double exact = energy_eccentric(0.5, 2.0, 0.5, 1.0);
    Stopwatch sw;
    const auto r = energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2.0}, mat, brute_force_config(profile));
    const double t = sw.seconds();
    out.push_back(make(5, "eccentric 4D brute force", rel_dev(r.value, exact), 1e-3, "rel deviation", t,
                       30.0, fmt_pair(r.value, exact)));
  }
  {
    const double b = 1.0;
    Stopwatch sw;
    const auto s = eccentric_series(0.3 * b, b, 0.2 * b, 1.0, 40, 40);
    const double t = sw.seconds();
    const double exact = energy_eccentric(0.3 * b, b, 0.2 * b, 1.0);
    out.push_back(make(5, "eccentric 40x40 series", rel_dev(s.value, exact), 1e-8, "rel deviation", t,
                       1e-2, fmt_pair(s.value, exact)));
  }
  return out;
}

std::vector<Check> continuation_checks(Profile profile) {
  const int samples = profile == Profile::fast ? 100 : 10000;
  std::mt19937_64 rng(0xC0171);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Stopwatch sw;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double b = 0.5 + 4.5 * unit(rng);
    const double a = b * (0.02 + 0.9 * unit(rng));
    const double offset = (b - a) * 0.98 * unit(rng);
    worst = std::max(worst, rel_dev(continue_cyl_cyl_to_contained(a, b, offset, 1.0),
                                     energy_eccentric(a, b, offset, 1.0)));
  }
  const double t = sw.seconds();
  return {make(6, "continuation == eccentric", worst, 1e-12, "max rel deviation", t,
               profile == Profile::fast ? 1e-2 : 0.0)};
}

std::vector<Check> limit_checks(Profile) {
  std::vector<Check> out;
  Stopwatch sw;
  const double cyl_cyl = energy_cyl_cyl(1.0, 1e4, 1e4 + 2.0, 1.0);
  const double cyl_plane = energy_cyl_plane(1.0, 2.0, 1.0);
  out.push_back(make(7, "cylinder-cylinder -> cylinder-plane (b = 1e4)", rel_dev(cyl_cyl, cyl_plane), 1e-3,
                     "rel deviation", sw.seconds(), 0.0, fmt_pair(cyl_cyl, cyl_plane)));

  const double b = 1e3;
  const double per_area = energy_coaxial(b - 1.0, b, 1.0) / (2.0 * pi * b);
  const double plates = energy_plates_dilute(1.0, 1.0);
  out.push_back(make(7, "coaxial -> dilute plates (b = 1e3, d = 1)", rel_dev(per_area, plates), 5e-3,
                     "rel deviation", 0.0, 0.0, fmt_pair(per_area, plates)));

  std::int64_t worst_ulp = 0;
  for (double a : {0.1, 0.5, 0.9, 1.3, 1.9}) {
    worst_ulp = std::max(worst_ulp, ulp_distance(energy_eccentric(a, 2.0, 0.0, 1.0), energy_coaxial(a, 2.0, 1.0)));
  }
  out.push_back(make(7, "eccentric(offset = 0) == coaxial", static_cast<double>(worst_ulp), 3.0,
                     "max ulp distance (< 4)", 0.0, 0.0));
  return out;
}

std::vector<Check> force_checks(Profile profile) {
  const double a = 0.5;
  const double b = 2.0;
  std::vector<Check> out;
  Stopwatch sw;
  double worst = 0.0;
  const int grid = 10;
  const double lo = 0.05 * b;
  const double hi = 0.7 * (1.0 - a / b) * b;
  const double h = 1e-6 * b;
  for (int k = 0; k < grid; ++k) {
    const double offset = lo + (hi - lo) * k / (grid - 1);
    const double fd = -(energy_eccentric(a, b, offset + h, 1.0) - energy_eccentric(a, b, offset - h, 1.0)) /
                      (2.0 * h);
    worst = std::max(worst, rel_dev(force_eccentric(a, b, offset, 1.0), fd));
  }
  out.push_back(make(8, "force vs central differences", worst, 1e-6, "max rel deviation", sw.seconds(), 0.0));

  out.push_back(make(8, "force at zero offset", std::abs(force_eccentric(a, b, 0.0, 1.0)), 0.0,
                     "|F(0)|", 0.0, 0.0));

  const int dense = profile == Profile::fast ? 200 : 5000;
  double min_force = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= dense; ++k) {
    const double offset = (b - a) * 0.999 * k / dense;
    min_force = std::min(min_force, force_eccentric(a, b, offset, 1.0));
  }
  out.push_back(make(8, "force positive for offset > 0", min_force > 0.0 ? 0.0 : 1.0, 0.0,
                     "1 if any F <= 0", 0.0, 0.0, "min F = " + std::to_string(min_force)));

  const double slope_small = force_eccentric(a, b, 1e-4, 1.0) / 1e-4;
  const double slope_tiny = force_eccentric(a, b, 1e-6, 1.0) / 1e-6;
  out.push_back(make(8, "linear growth F/R -> positive constant", slope_small > 0.0 ? rel_dev(slope_small, slope_tiny) : 1.0,
                     1e-6, "rel change of F/R between R = 1e-4 and 1e-6", 0.0, 0.0,
                     "F/R = " + std::to_string(slope_tiny)));
  return out;
}

std::vector<Check> self_energy_checks(Profile) {
  std::vector<Check> out;
  const double at_five = self_energy_regulated(1.0, 1.0, RegulatorExponent{5.0});
  out.push_back(make(9, "regulated self-energy at beta = 5", std::abs(at_five), 0.0, "|E|", 0.0, 0.0));
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  for (double beta : {0.0, 0.5}) {
    Stopwatch sw;
    const auto r = self_energy_integral_regulated(1.0, 1.0, beta, cfg);
    const double t = sw.seconds();
    const double exact = self_energy_regulated(1.0, 1.0, RegulatorExponent{beta});
    out.push_back(make(9, "self-energy quadrature beta = " + std::to_string(beta).substr(0, 3),
                       rel_dev(r.value, exact), 1e-8, "rel deviation", t, 1.0, fmt_pair(r.value, exact)));
  }
  return out;
}

std::vector<Check> determinism_checks(Profile profile) {
  const auto mat = MaterialPair::from_coupling(1.0);
  std::vector<Check> out;

  // Repeated runs, every method.
  std::size_t mismatches = 0;
  for (Method m : {Method::adaptive, Method::quasi_random, Method::monte_carlo}) {
    QuadratureConfig cfg;
    cfg.method = m;
    cfg.rel_tol = m == Method::adaptive ? 1e-6 : 1e-2;
    cfg.seed = 77;
    const auto first = energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2.0}, mat, cfg);
    const auto second = energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2.0}, mat, cfg);
    if (std::bit_cast<std::uint64_t>(first.value) != std::bit_cast<std::uint64_t>(second.value) ||
        std::bit_cast<std::uint64_t>(first.error_estimate) !=
            std::bit_cast<std::uint64_t>(second.error_estimate) ||
        first.evaluations_used != second.evaluations_used) {
      ++mismatches;
    }
  }
  out.push_back(make(10, "fixed-seed runs are bit-identical", static_cast<double>(mismatches), 0.0,
                     "mismatching methods", 0.0, 0.0));

  // Error-estimate honesty over the oracle suite.
  struct Case {
    const char* name;
    double reference;
    std::function<EnergyResult(const QuadratureConfig&)> run;
  };
  const std::vector<Case> cases{
      {"sphere-plane", energy_sphere_plane(1, 2, 1),
       [&](const QuadratureConfig& c) { return energy_pair_3d(Ball{{0, 0, 0}, 1}, HalfSpace{2}, mat, c); }},
      {"coaxial", energy_coaxial(1, 2, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0, 0}, 1}, ExteriorDisk{2}, mat, c); }},
      {"eccentric", energy_eccentric(0.5, 2, 0.5, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2}, mat, c); }},
      {"eccentric-wide", energy_eccentric(0.3, 1, 0.4, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0.4, 0}, 0.3}, ExteriorDisk{1}, mat, c); }},
      {"cylinder-plane", energy_cyl_plane(1, 2, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0, 0}, 1}, HalfPlane{2}, mat, c); }},
      {"cylinder-cylinder", energy_cyl_cyl(1, 1, 3, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0, 0}, 1}, Disk{{3, 0}, 1}, mat, c); }},
      {"cylinder-cylinder-unequal", energy_cyl_cyl(0.5, 1.5, 2.5, 1),
       [&](const QuadratureConfig& c) { return energy_pair_2d(Disk{{0, 0}, 0.5}, Disk{{0, 2.5}, 1.5}, mat, c); }},
      {"coaxial-reduced", energy_coaxial(1, 2, 1),
       [&](const QuadratureConfig& c) { return coaxial_reduced(1, 2, 1, c); }},
      {"self-energy-0", self_energy_regulated(1, 1, RegulatorExponent{0.0}),
       [&](const QuadratureConfig& c) { return self_energy_integral_regulated(1, 1, 0.0, c); }},
      {"self-energy-0.5", self_energy_regulated(1, 1, RegulatorExponent{0.5}),
       [&](const QuadratureConfig& c) { return self_energy_integral_regulated(1, 1, 0.5, c); }},
  };

  const int seeds = profile == Profile::fast ? 3 : 10;
  std::size_t runs = 0;
  std::size_t honest = 0;
  std::string failures;
  auto tally = [&](const std::string& label, const std::function<EnergyResult()>& run,
                   double reference) {
    EnergyResult r;
    try {
      r = run();
    } catch (const NotConvergedError& e) {
      r = e.partial();
    }
    ++runs;
    if (std::abs(r.value - reference) <= 3.0 * r.error_estimate) {
      ++honest;
    } else {
      failures += label + " ";
    }
  };
  Stopwatch sw;
  for (const auto& c : cases) {
    for (double tol : {1e-3, 1e-5, 1e-7}) {
      QuadratureConfig cfg;
      cfg.rel_tol = tol;
      cfg.max_evaluations = 20'000'000;
      tally(std::string(c.name) + "/adaptive", [&] { return c.run(cfg); }, c.reference);
    }
  }
  // Stochastic methods on the 2D geometries, several seeds.
  for (std::size_t k = 1; k < 7; ++k) {
    for (Method m : {Method::quasi_random, Method::monte_carlo}) {
      for (int s = 0; s < seeds; ++s) {
        QuadratureConfig cfg;
        cfg.method = m;
        cfg.rel_tol = m == Method::quasi_random ? 1e-4 : 1e-2;
        cfg.seed = 1000 + static_cast<std::uint64_t>(s);
        tally(std::string(cases[k].name) + "/" + std::string(method_name(m)),
              [&] { return cases[k].run(cfg); }, cases[k].reference);
      }
    }
  }
  const double fraction = static_cast<double>(honest) / static_cast<double>(runs);
  out.push_back(make(10, "|deviation| <= 3 x error estimate", 1.0 - fraction, 0.05,
                     "fraction of runs violating", sw.seconds(), 0.0,
                     std::to_string(honest) + "/" + std::to_string(runs) + " honest" +
                         (failures.empty() ? "" : "; violations: " + failures)));
  return out;
}

std::vector<Check> run_all(Profile profile) {
  std::vector<Check> all;
  for (auto* fn : {&frequency_integral_checks, &dyadic_checks, &sphere_plane_checks, &coaxial_checks,
                   &eccentric_checks, &continuation_checks, &limit_checks, &force_checks,
                   &self_energy_checks, &determinism_checks}) {
    auto part = fn(profile);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace casimir::verify
