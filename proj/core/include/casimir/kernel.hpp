#pragma once

// Casimir-Polder pair kernel built from the free Green's dyadic at
// imaginary frequency. Natural units hbar = c = 1 throughout.

#include <array>
#include <cstddef>

namespace casimir {

using Vec3 = std::array<double, 3>;

/// Dielectric contrasts chi = eps - 1 of two bodies and their coupling
/// constant n = 23 chi1 chi2 / (640 pi^2).
class MaterialPair {
 public:
  MaterialPair(double chi1, double chi2);

  static MaterialPair from_permittivities(double eps1, double eps2);
  /// Symmetric contrasts reproducing a prescribed coupling (the sign of n
  /// goes to chi2).
  static MaterialPair from_coupling(double n);

  double chi1() const noexcept { return chi1_; }
  double chi2() const noexcept { return chi2_; }
  double n() const noexcept { return n_; }

 private:
  double chi1_;
  double chi2_;
  double n_;
};

double coupling_n(double chi1, double chi2);

/// A separation R > 0 together with a Euclidean frequency zeta; t = |zeta| R.
class KernelPoint {
 public:
  KernelPoint(double separation, double zeta);

  double separation() const noexcept { return separation_; }
  double zeta() const noexcept { return zeta_; }
  double t() const noexcept { return t_; }

 private:
  double separation_;
  double zeta_;
  double t_;
};

/// e^{-|zeta| R} / (4 pi R)
double scalar_green(double r_sep, double zeta);

/// Component (i, j) of (grad_i grad_j - zeta^2 delta_ij) G0(r - r').
double dyadic_component(const Vec3& r, const Vec3& r_prime, double zeta,
                        std::size_t i, std::size_t j);

/// (6 + 12t + 10t^2 + 4t^3 + 2t^4) e^{-2t}: the full contraction
/// sum_ij Gamma_ij Gamma_ij multiplied by (4 pi R^3)^2.
double contraction_polynomial(double t);

struct FrequencyIntegral {
  double value;
  double error_estimate;
  double upper_limit;
};

/// int_0^inf du e^{-u} (6 + 6u + 5u^2/2 + u^3/2 + u^4/8) by adaptive
/// Gauss-Kronrod on a truncated range. The exact value is 23.
FrequencyIntegral frequency_integral();

/// The imaginary-frequency integrand above, before damping is applied.
double frequency_integrand(double u);

/// Energy density per volume pair, -23 chi1 chi2 / ((4 pi)^3 s^7).
double pair_kernel_3d(double s, const MaterialPair& mat);

/// Energy per unit length per area pair for two parallel line elements at
/// in-plane distance s: -(32 n / (3 pi)) s^{-6}.
double pair_kernel_2d(double s, const MaterialPair& mat);

/// d/ds of pair_kernel_2d.
double pair_kernel_2d_slope(double s, const MaterialPair& mat);

}  // namespace casimir
