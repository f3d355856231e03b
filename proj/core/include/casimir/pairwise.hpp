#pragma once

// Brute-force Casimir-Polder summation over pairs of bodies.
//
// Bounded bodies are mapped to the unit cube with polynomial Jacobians.
// An unbounded partner (half-plane, half-space, slab, exterior of a disk) is
// parametrised in polar or spherical coordinates around the current point of
// the bounded body, with the radial coordinate r = r_min t^{-1/4}. Against
// the r^-6 (2D) and r^-7 (3D) kernels this makes the radial integrand
// constant in t, so the infinite tail carries no truncation error.

#include <cstddef>
#include <optional>

#include "casimir/cubature.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/kernel.hpp"
#include "casimir/regions.hpp"
#include "casimir/units.hpp"

namespace casimir {

struct EnergyResult {
  double value = 0.0;
  UnitKind unit_kind = UnitKind::energy;
  double error_estimate = 0.0;
  std::size_t evaluations_used = 0;
  Method method = Method::adaptive;
};

/// Thrown when the evaluation budget runs out; carries the best estimate.
class NotConvergedError : public NumericalError {
 public:
  explicit NotConvergedError(const EnergyResult& partial);
  const EnergyResult& partial() const noexcept { return partial_; }

 private:
  EnergyResult partial_;
};

/// Minimum separation accepted by the integrators, relative to the larger
/// length scale of the two bodies.
inline constexpr double contact_margin = 1e-9;

/// Total interaction energy of two disjoint 3D bodies (6D integral).
EnergyResult energy_pair_3d(const Region3D& body1, const Region3D& body2, const MaterialPair& mat,
                            const QuadratureConfig& cfg);

/// Energy per unit length of two disjoint cross-sections (4D integral).
EnergyResult energy_pair_2d(const Region2D& region1, const Region2D& region2,
                            const MaterialPair& mat, const QuadratureConfig& cfg);

/// x-component of the force per unit length on region1, -dE/dx1.
EnergyResult force_pair_2d(const Region2D& region1, const Region2D& region2,
                           const MaterialPair& mat, const QuadratureConfig& cfg);

/// int_0^{2 pi} dtheta (rho^2 + rho'^2 - 2 rho rho' cos theta)^-3 in closed
/// form: 2 pi (x^2 + y^2 + 4 x y) / |y - x|^5 with x = rho^2, y = rho'^2.
double angular_kernel_reduction(double rho, double rho_prime);

/// Coaxial energy from the two-dimensional reduced integral
/// -(32 pi n / 3) int_0^{a^2} dx int_{b^2}^inf dy (x^2 + y^2 + 4xy) / (y - x)^5.
EnergyResult coaxial_reduced(double a, double b, double n, const QuadratureConfig& cfg);

/// Regulated cylinder self-energy by quadrature, valid for beta < 1:
/// -(16 n / 3) int_0^{a^2} dx x^{3-beta} int_0^1 du (u^{2-beta} - 6 u^{1-beta} + 6 u^{-beta}).
EnergyResult self_energy_integral_regulated(double a, double n_self, double beta,
                                            const QuadratureConfig& cfg);

/// Brute-force counterpart of closed_form() for each geometry kind.
EnergyResult integrate_geometry(const Geometry& g, const MaterialPair& mat,
                                const QuadratureConfig& cfg);

/// Brute-force -dE/d(offset) where a force is defined (eccentric), else nullopt.
std::optional<EnergyResult> integrate_force(const Geometry& g, const MaterialPair& mat,
                                            const QuadratureConfig& cfg);

}  // namespace casimir
