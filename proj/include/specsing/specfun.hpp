#pragma once

// Spherical Bessel j_nu and spherical Hankel h_nu^(1,2) of real order and
// complex argument.
//
// Two regimes:
//  * |z| <= kSwitchRadius: ascending power series of J_{nu+1/2}, scaled by
//    sqrt(pi/2z). The sum is accumulated in 50-digit floating point because
//    the terms reach ~e^{|z|} before cancelling down to O(1).
//  * |z| >  kSwitchRadius: Hankel asymptotic sums in the coefficients A_k(nu),
//    truncated at the smallest-magnitude term.
// Derivatives use u' = [nu u_{nu-1} - (nu+1) u_{nu+1}] / (2nu+1).

#include <complex>
#include <concepts>
#include <string_view>

namespace specsing::specfun {

inline constexpr double kSwitchRadius = 30.0;

/// Maximum number of ascending-series terms before NonConvergence.
inline constexpr int kSeriesTermBudget = 1000;

enum class Regime { Series, Asymptotic };
enum class RegimeChoice { Auto, Series, Asymptotic };

std::string_view to_string(Regime r);

/// A_k(nu) = Gamma(nu+k+1) / (2^k k! Gamma(nu-k+1)), via the finite product
/// prod_{j=1..k} (nu+j)(nu-j+1) / (2j). A_0 = 1.
template <std::floating_point Real>
Real coeff_A(int k, Real nu);

template <std::floating_point Real>
struct SphValuesT {
  std::complex<Real> j, h1, h2;
};

template <std::floating_point Real>
struct BesselEvalT {
  Real nu;
  std::complex<Real> z;
  std::complex<Real> j, j_prime;
  std::complex<Real> h1, h1_prime;
  std::complex<Real> h2, h2_prime;
  Regime regime;
};

using BesselEval = BesselEvalT<double>;

/// j, h1, h2 at a single order >= -1 in the requested regime.
/// Throws OriginError for z = 0, NonConvergence if the series budget runs out.
template <std::floating_point Real>
SphValuesT<Real> sph_values(Real order, std::complex<Real> z, Regime regime);

/// Full evaluation at order nu >= 0, including derivatives.
template <std::floating_point Real>
BesselEvalT<Real> sph_bessel(Real nu, std::complex<Real> z,
                             RegimeChoice choice = RegimeChoice::Auto);

inline BesselEval sph_bessel(double nu, std::complex<double> z,
                             RegimeChoice choice = RegimeChoice::Auto) {
  return sph_bessel<double>(nu, z, choice);
}

inline double coeff_A(int k, double nu) { return coeff_A<double>(k, nu); }

}  // namespace specsing::specfun
