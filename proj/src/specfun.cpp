#include "specsing/specfun.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "specsing/errors.hpp"

namespace specsing::specfun {

namespace {

using wreal = boost::multiprecision::cpp_bin_float_50;
using wcplx = boost::multiprecision::cpp_complex_50;

const wreal& wide_pi() {
  static const wreal pi = boost::math::constants::pi<wreal>();
  return pi;
}

const wreal& wide_root_pi_over_2() {
  static const wreal v = boost::math::constants::root_pi<wreal>() / 2;
  return v;
}

// Stop once terms fall this far below the running sum. Near |z| = 30 with a
// large imaginary part the recessive Hankel function is ~e^-60 of j and y, so
// the sums must carry ~45 digits for it to survive the subtraction.
const wreal& series_stop() {
  static const wreal v("1e-48");
  return v;
}

constexpr double kSeriesAcceptRel = 1e-16;

wreal norm2(const wcplx& v) { return v.real() * v.real() + v.imag() * v.imag(); }

bool negligible(const wcplx& term, const wcplx& sum) {
  static const wreal stop_sq = series_stop() * series_stop();
  return norm2(term) <= stop_sq * norm2(sum);
}

// sum_{k>=0} w^k / (k! Gamma(k + mu + 1)), w = -z^2/4. mu + 1 must not be a
// nonpositive integer.
wcplx ascending_sum(const wreal& mu, const wcplx& w, double abs_z) {
  wcplx term(wreal(1) / boost::math::tgamma(mu + 1));
  wcplx sum = term;
  for (int k = 0; k < kSeriesTermBudget; ++k) {
    term *= w;
    term /= wreal(k + 1) * (mu + (k + 1));
    sum += term;
    // Terms only start to decay once k exceeds |z|.
    if (k + 1 > abs_z && negligible(term, sum)) return sum;
  }
  if (abs(term) <= wreal(kSeriesAcceptRel) * abs(sum)) return sum;
  throw NonConvergence("ascending Bessel series did not converge within the term budget");
}

wcplx wide_pow(const wcplx& base, const wreal& p) { return exp(wcplx(p) * log(base)); }

// Y_n for integer n >= 0 (Neumann form with digamma coefficients).
wcplx neumann_integer(int n, const wcplx& z, const wcplx& jn_cyl, double abs_z) {
  const wreal& pi = wide_pi();
  const wreal gamma = boost::math::constants::euler<wreal>();
  const wcplx half = z / wcplx(wreal(2));
  const wcplx half_sq = half * half;

  wcplx finite(0);
  if (n > 0) {
    // sum_{k=0}^{n-1} (n-k-1)!/k! (z/2)^{2k}
    wreal fact_num = boost::math::factorial<wreal>(static_cast<unsigned>(n - 1));
    wreal fact_den = 1;
    wcplx power(1);
    for (int k = 0; k < n; ++k) {
      finite += wcplx(fact_num / fact_den) * power;
      power *= half_sq;
      if (k + 1 < n) {
        fact_num /= (n - k - 1);
        fact_den *= (k + 1);
      }
    }
  }

  // sum_k [psi(k+1) + psi(n+k+1)] (-z^2/4)^k / (k! (n+k)!), psi(m+1) = -gamma + H_m
  const wcplx w = -half_sq;
  wreal h_k = 0;
  wreal h_nk = 0;
  for (int m = 1; m <= n; ++m) h_nk += wreal(1) / m;
  wcplx term(wreal(1) / boost::math::factorial<wreal>(static_cast<unsigned>(n)));
  wcplx sum = term * wcplx(h_k + h_nk - 2 * gamma);
  bool done = false;
  for (int k = 0; k < kSeriesTermBudget; ++k) {
    term *= w;
    term /= wreal((k + 1) * (n + k + 1));
    h_k += wreal(1) / (k + 1);
    h_nk += wreal(1) / (n + k + 1);
    const wcplx contrib = term * wcplx(h_k + h_nk - 2 * gamma);
    sum += contrib;
    if (k + 1 > abs_z && negligible(contrib, sum)) {
      done = true;
      break;
    }
  }
  if (!done) throw NonConvergence("Neumann series did not converge within the term budget");

  return -finite * wide_pow(half, wreal(-n)) / wcplx(pi) +
         wcplx(wreal(2) / pi) * log(half) * jn_cyl - wide_pow(half, wreal(n)) * sum / wcplx(pi);
}

template <std::floating_point Real>
SphValuesT<Real> series_values(Real order, std::complex<Real> z) {
  const wcplx wz(wreal(z.real()), wreal(z.imag()));
  const double abs_z = std::abs(std::complex<double>(z));
  const wcplx half = wz / wcplx(wreal(2));
  const wcplx w = -half * half;
  const wreal ord(order);
  const wreal mu = ord + wreal("0.5");

  wcplx j, y;
  const wreal mu_round = round(mu);
  if (mu == mu_round) {
    // Integer cylinder order: reflection formula degenerates, use Y_n directly.
    const int n = mu_round.convert_to<int>();
    const wcplx prefactor = sqrt(wcplx(wide_pi()) / (wcplx(wreal(2)) * wz));
    const wcplx jn_cyl = wide_pow(half, wreal(n)) * ascending_sum(wreal(n), w, abs_z);
    j = prefactor * jn_cyl;
    y = prefactor * neumann_integer(n, wz, jn_cyl, abs_z);
  } else {
    // j_nu = (sqrt(pi)/2) (z/2)^nu S_{nu+1/2};  j_{-nu-1} likewise with -nu-1.
    const wcplx c(wide_root_pi_over_2());
    j = c * wide_pow(half, ord) * ascending_sum(mu, w, abs_z);
    const wcplx j_reflected = c * wide_pow(half, -ord - 1) * ascending_sum(-mu, w, abs_z);
    const wreal s = boost::math::sin_pi(mu);
    const wreal co = boost::math::cos_pi(mu);
    y = (j * wcplx(co) - j_reflected) / wcplx(s);
  }
  const wcplx iy = wcplx(wreal(0), wreal(1)) * y;
  const wcplx h1 = j + iy;
  const wcplx h2 = j - iy;

  auto narrow = [](const wcplx& v) {
    return std::complex<Real>(v.real().template convert_to<Real>(),
                              v.imag().template convert_to<Real>());
  };
  return {narrow(j), narrow(h1), narrow(h2)};
}

template <std::floating_point Real>
SphValuesT<Real> hankel_sums(Real order, std::complex<Real> z) {
  using C = std::complex<Real>;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const C inv_z = Real(1) / z;

  // P = sum_s (-1)^s A_2s / z^2s,  Q = sum_s (-1)^s A_{2s+1} / z^{2s+1}
  C P{0}, Q{0};
  C inv_pow{1};
  Real a_k = 1;
  Real prev_mag = std::numeric_limits<Real>::infinity();
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      a_k *= (order + k) * (order - k + 1) / (2 * k);
      inv_pow *= inv_z;
    }
    if (a_k == 0) break;  // integer order: the sum terminates
    const C term = a_k * inv_pow;
    const Real mag = std::abs(term);
    if (mag >= prev_mag) break;  // smallest term reached
    const Real sign = ((k / 2) % 2 == 0) ? Real(1) : Real(-1);
    if (k % 2 == 0) {
      P += sign * term;
    } else {
      Q += sign * term;
    }
    if (mag <= eps * (std::abs(P) + std::abs(Q))) break;
    prev_mag = mag;
  }

  const C I{0, 1};
  const C phase = z - std::numbers::pi_v<Real> * order / Real(2);
  const C e_plus = std::exp(I * phase);
  const C e_minus = std::exp(-I * phase);
  const C j = (std::sin(phase) * P + std::cos(phase) * Q) * inv_z;
  const C h1 = e_plus * inv_z * (-I * P + Q);
  const C h2 = e_minus * inv_z * (I * P + Q);
  return {j, h1, h2};
}

// In the left half-plane the dominant Hankel function picks up a Stokes
// multiple of the recessive one. Take j from -z, where both sums are clean,
// keep the recessive Hankel function and recover the other from 2j.
template <std::floating_point Real>
SphValuesT<Real> asymptotic_values(Real order, std::complex<Real> z) {
  using C = std::complex<Real>;
  if (z.real() >= 0) return hankel_sums(order, z);
  const bool upper = z.imag() >= 0;
  const Real turn = (upper ? 1 : -1) * std::numbers::pi_v<Real> * order;
  const C j = std::polar(Real(1), turn) * hankel_sums(order, -z).j;
  const auto raw = hankel_sums(order, z);
  if (upper) return {j, raw.h1, Real(2) * j - raw.h1};
  return {j, Real(2) * j - raw.h2, raw.h2};
}

}  // namespace

std::string_view to_string(Regime r) {
  return r == Regime::Series ? "Series" : "Asymptotic";
}

template <std::floating_point Real>
Real coeff_A(int k, Real nu) {
  if (k < 0) throw DomainError("coeff_A requires k >= 0");
  Real value = 1;
  for (int j = 1; j <= k; ++j) value *= (nu + j) * (nu - j + 1) / (2 * j);
  return value;
}

template <std::floating_point Real>
SphValuesT<Real> sph_values(Real order, std::complex<Real> z, Regime regime) {
  if (z == std::complex<Real>(0)) throw OriginError("spherical Bessel functions at z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("non-finite Bessel argument");
  }
  if (!(order >= Real(-1)) || !std::isfinite(order)) {
    throw DomainError("spherical Bessel order must be >= -1");
  }
  return regime == Regime::Series ? series_values(order, z) : asymptotic_values(order, z);
}

template <std::floating_point Real>
BesselEvalT<Real> sph_bessel(Real nu, std::complex<Real> z, RegimeChoice choice) {
  if (!(nu >= 0) || !std::isfinite(nu)) throw DomainError("order nu must be a finite real >= 0");
  Regime regime;
  switch (choice) {
    case RegimeChoice::Series: regime = Regime::Series; break;
    case RegimeChoice::Asymptotic: regime = Regime::Asymptotic; break;
    default:
      regime = std::abs(z) <= Real(kSwitchRadius) ? Regime::Series : Regime::Asymptotic;
  }
  const auto lower = sph_values<Real>(nu - 1, z, regime);
  const auto mid = sph_values<Real>(nu, z, regime);
  const auto upper = sph_values<Real>(nu + 1, z, regime);

  const Real a = nu / (2 * nu + 1);
  const Real b = (nu + 1) / (2 * nu + 1);
  return BesselEvalT<Real>{
      nu,
      z,
      mid.j,
      a * lower.j - b * upper.j,
      mid.h1,
      a * lower.h1 - b * upper.h1,
      mid.h2,
      a * lower.h2 - b * upper.h2,
      regime,
  };
}

template double coeff_A<double>(int, double);
template long double coeff_A<long double>(int, long double);
template SphValuesT<double> sph_values<double>(double, std::complex<double>, Regime);
template SphValuesT<long double> sph_values<long double>(long double, std::complex<long double>,
                                                         Regime);
template BesselEvalT<double> sph_bessel<double>(double, std::complex<double>, RegimeChoice);
template BesselEvalT<long double> sph_bessel<long double>(long double, std::complex<long double>,
                                                          RegimeChoice);

}  // namespace specsing::specfun
