#pragma once

// Spherical gain-medium resonator: transverse spherical wave scattered by a
// homogeneous ball of complex refractive index n, Lorentz dispersion, and the
// laser-threshold (spectral singularity) conditions.
//
// All lengths are in meters and gains in 1/meters. Arithmetic is carried out
// in long double: at x = ka ~ 1e5 the Bessel phases amplify rounding in the
// wavelength by that factor.

#include <complex>
#include <optional>
#include <vector>

namespace specsing::sphere {

using Real = long double;
using Complex = std::complex<Real>;

/// Order of the radial Bessel functions for the transverse spherical wave.
inline const Real kNuTransverse = std::sqrt(Real(5)) / 2;

/// Above this x = ka the perturbative (asymptotic) treatment is trusted.
inline constexpr Real kAsymptoticX = 100;

struct GainMedium {
  Real n0 = 1.5;
  Real lambda0 = 500e-9;
  Real gamma_hat = 0.05;
  Real kappa0 = 0;  ///< imaginary index at resonance; <= 0 for gain

  static GainMedium from_g0(Real n0, Real lambda0, Real gamma_hat, Real g0);
  /// g0 = -4 pi kappa0 / lambda0
  Real g0() const;
  GainMedium with_g0(Real g0) const;
  /// Throws InvalidParameters unless n0 > 1, lambda0 > 0, gamma_hat > 0.
  void validate() const;
};

struct SphericalResonator {
  Real a = 1e-3;
  void validate() const;
};

/// ln((n0+1)/(n0-1))
Real log_contrast(Real n0);

Real f1(Real gamma_hat, Real omega_hat);
Real f2(Real gamma_hat, Real omega_hat);

/// Full dispersion n = sqrt(n0^2 - 2 n0 gamma_hat kappa0 / (w^2 - 1 + i gamma_hat w)),
/// w = lambda0 / lambda.
Complex refractive_index(Real lambda, const GainMedium& medium);

struct LinearIndex {
  Real eta;
  Real kappa;
};

/// First order in kappa0: eta = n0 + kappa0 f1, kappa = kappa0 f2.
LinearIndex refractive_index_linear(Real lambda, const GainMedium& medium);

struct Reflection {
  Complex amplitude;  ///< A1 / A2
  Real R;             ///< |A1 / A2|^2
  bool pole_proximity;
};

/// Reflection amplitude for wavenumber k (outside) and interior index n.
Reflection reflection_amplitude(Complex n, Real k, Real a);

/// a * [d/dr ln h1_nu(kr) - d/dr ln j_nu(n k r)] at r = a.
Complex ss_residual(Complex n, Real k, Real a);

/// |ss_residual| normalized by the magnitudes of the two logarithmic derivatives.
Real ss_residual_rel(Complex n, Real k, Real a);

/// lambda = 4 n0 a / (2m + nu + 1)
Real mode_wavelength_pert(int m, const GainMedium& medium, const SphericalResonator& res);

/// Threshold gain 4 n0 L / (lambda0 (2m+nu+1) f2(gamma_hat, lambda0/lambda)), L = log_contrast.
Real mode_gain_pert(int m, const GainMedium& medium, const SphericalResonator& res);

/// (L / a) [1 + f(lambda) / gamma_hat^2], f = ((lambda^2 - lambda0^2) / (lambda0 lambda))^2,
/// at the perturbative mode wavelength.
Real mode_gain_pert_radius_form(int m, const GainMedium& medium, const SphericalResonator& res);

/// Smallest radius for which some mode reaches threshold at g0_max: L / g0_max.
Real min_radius(const GainMedium& medium, Real g0_max);

struct ModeSolution {
  int m = 0;
  Real lambda_pert = 0;
  Real g0_pert = 0;
  Real lambda_exact = 0;  ///< equals lambda_pert unless exact
  Real g0 = 0;            ///< threshold gain at lambda_exact (or the perturbative value)
  Real x = 0;             ///< k a
  Real eta = 0;
  Real kappa = 0;
  Real residual_rel = 0;
  int iterations = 0;
  bool exact = false;
  bool asymptotic_regime = false;  ///< x > kAsymptoticX
};

/// Perturbative mode; eta and kappa from the linearized dispersion.
ModeSolution perturbative_mode(int m, const GainMedium& medium, const SphericalResonator& res);

struct ExactSeed {
  Real lambda;
  Real g0;
};

struct SolverOptions {
  int max_iter = 50;
  Real fd_rel_step = 1e-7L;
  Real residual_tol = 1e-12L;
  Real bracket = 0.1e-9L;  ///< allowed |lambda_exact - lambda_pert|
};

/// Damped Newton on (lambda, kappa0) zeroing ss_residual with the full dispersion.
/// Throws SeedOutOfRegime if the seed has x < kAsymptoticX, NoConvergence otherwise.
ModeSolution solve_mode_exact(int m, const GainMedium& medium, const SphericalResonator& res,
                              std::optional<ExactSeed> seed = std::nullopt,
                              const SolverOptions& opts = {});

/// Every mode whose perturbative threshold is <= g0_max, sorted by g0 ascending.
std::vector<ModeSolution> enumerate_modes(const GainMedium& medium, const SphericalResonator& res,
                                          Real g0_max, bool refine = false,
                                          const SolverOptions& opts = {});

struct ScanSample {
  Real lambda;
  Real R;
};

struct ReflectionScan {
  std::vector<ScanSample> samples;
  std::vector<ScanSample> peaks;  ///< refined local maxima, tallest first
};

/// R(lambda) on an even grid at the medium's kappa0. Interior local maxima of
/// the grid are refined by a bracketed 1-D maximization.
ReflectionScan scan_reflection(const GainMedium& medium, const SphericalResonator& res,
                               Real lambda_min, Real lambda_max, int points);

}  // namespace specsing::sphere
