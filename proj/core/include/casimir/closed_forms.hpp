#pragma once

// Closed-form dispersion energies between dilute dielectric bodies.
//
// Conventions: lengths in an arbitrary unit L, hbar = c = 1. Energies of
// infinitely long parallel bodies are per unit length (L^-2), energies of
// finite bodies are totals (L^-1), and plate energies are per unit area
// (L^-3). `n` is the coupling from coupling_n().

namespace casimir {

/// Two external parallel cylinders of radii a, b whose axes are r_axes apart.
double energy_cyl_cyl(double a, double b, double r_axes, double n);

/// Cylinder of radius a whose axis is z from a dielectric half-space.
double energy_cyl_plane(double a, double z, double n);

/// Sphere of radius a whose centre is z from a dielectric half-space.
double energy_sphere_plane(double a, double z, double n);

/// Half-space against a thin sheet at distance z, per area and per sheet
/// thickness: -n / z^4.
double slab_element(double z, double n);

/// Cylinder of radius a coaxial with a cavity of radius b in an outer medium.
double energy_coaxial(double a, double b, double n);

/// Dilute parallel plates with gap d (per unit area).
double energy_plates_dilute(double d, double n);

/// Inner cylinder (radius a) displaced by `offset` inside a cavity of radius
/// b. Requires offset >= 0 and offset + a < b.
double energy_eccentric(double a, double b, double offset, double n);

struct SeriesResult {
  double value;
  /// ((a + offset) / b)^2; the series diverges as this reaches 1.
  double convergence_ratio;
  /// Magnitude of the last row and column of terms relative to the sum.
  double truncation_estimate;
  /// Set when truncation_estimate exceeds 1e-6 or convergence_ratio > 0.8.
  bool slow_convergence;
};

/// Double power series of energy_eccentric in (a/b)^2 and (offset/b)^2,
/// truncated after n_max and m_max.
SeriesResult eccentric_series(double a, double b, double offset, double n, int n_max, int m_max);

/// Coefficient of (a^2/b^2)^k (offset^2/b^2)^m in eccentric_series.
double eccentric_series_coefficient(int k, int m);

/// Binomial coefficient by multiplicative recurrence in double precision.
/// Throws DomainError when n exceeds 1000.
double binomial(int n, int r);

/// Force per unit length -dE/d(offset) on the inner cylinder of the
/// eccentric configuration. Zero at offset = 0, positive otherwise.
double force_eccentric(double a, double b, double offset, double n);

/// The external two-cylinder formula evaluated for a cylinder of radius a
/// contained in a cavity of radius b (r_axes + a < b). The root branch is
/// chosen so that the energy is negative for n > 0.
double continue_cyl_cyl_to_contained(double a, double b, double r_axes, double n);

/// Exponent replacing the divergent power in the cylinder self-energy.
class RegulatorExponent {
 public:
  /// Throws DomainError at the poles beta = 1, 2, 3.
  explicit RegulatorExponent(double beta);
  double value() const noexcept { return beta_; }

 private:
  double beta_;
};

/// -(16 n / 3) (a^2)^{4-beta} (5 - beta) / ((1 - beta)(2 - beta)(3 - beta))
double self_energy_regulated(double a, double n_self, RegulatorExponent beta);

/// The continuation of self_energy_regulated to beta = 5, which vanishes.
double self_energy_dilute_cylinder(double a, double n_self);

}  // namespace casimir
