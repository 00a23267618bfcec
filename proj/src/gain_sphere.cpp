#include "specsing/gain_sphere.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specsing/errors.hpp"
#include "specsing/specfun.hpp"

namespace specsing::sphere {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr Real kPoleRel = 1e-13L;

struct LogDerivatives {
  Complex outer;  ///< x h1'(x) / h1(x)
  Complex inner;  ///< n x j'(n x) / j(n x)
};

LogDerivatives log_derivatives(Complex n, Real k, Real a) {
  if (!(k > 0) || !(a > 0)) throw DomainError("wavenumber and radius must be positive");
  const Real x = k * a;
  const Complex nx = n * x;
  const auto out = specfun::sph_bessel<Real>(kNuTransverse, Complex(x));
  const auto in = specfun::sph_bessel<Real>(kNuTransverse, nx);
  return {x * out.h1_prime / out.h1, nx * in.j_prime / in.j};
}

Real wavenumber(Real lambda) { return 2 * kPi / lambda; }

GainMedium with_kappa0(const GainMedium& m, Real kappa0) {
  GainMedium out = m;
  out.kappa0 = kappa0;
  return out;
}

Real kappa0_from_g0(Real g0, Real lambda0) { return -g0 * lambda0 / (4 * kPi); }

}  // namespace

GainMedium GainMedium::from_g0(Real n0, Real lambda0, Real gamma_hat, Real g0) {
  return {n0, lambda0, gamma_hat, kappa0_from_g0(g0, lambda0)};
}

Real GainMedium::g0() const { return -4 * kPi * kappa0 / lambda0; }

GainMedium GainMedium::with_g0(Real g) const { return with_kappa0(*this, kappa0_from_g0(g, lambda0)); }

void GainMedium::validate() const {
  if (!(n0 > 1) || !std::isfinite(n0)) throw InvalidParameters("n0 must be a finite real > 1");
  if (!(lambda0 > 0) || !std::isfinite(lambda0)) throw InvalidParameters("lambda0 must be positive");
  if (!(gamma_hat > 0) || !std::isfinite(gamma_hat)) {
    throw InvalidParameters("gamma_hat must be positive");
  }
  if (!std::isfinite(kappa0)) throw InvalidParameters("kappa0 must be finite");
}

void SphericalResonator::validate() const {
  if (!(a > 0) || !std::isfinite(a)) throw InvalidParameters("radius must be positive");
}

Real log_contrast(Real n0) {
  if (!(n0 > 1)) throw InvalidParameters("n0 must exceed 1");
  return std::log((n0 + 1) / (n0 - 1));
}

Real f1(Real g, Real w) {
  const Real u = 1 - w * w;
  return g * u / (u * u + g * g * w * w);
}

Real f2(Real g, Real w) {
  const Real u = 1 - w * w;
  return g * g * w / (u * u + g * g * w * w);
}

Complex refractive_index(Real lambda, const GainMedium& medium) {
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  const Real w = medium.lambda0 / lambda;
  const Real wp2 = 2 * medium.n0 * medium.gamma_hat * medium.kappa0;
  const Complex denom(w * w - 1, medium.gamma_hat * w);
  return std::sqrt(Complex(medium.n0 * medium.n0) - wp2 / denom);
}

LinearIndex refractive_index_linear(Real lambda, const GainMedium& medium) {
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  const Real w = medium.lambda0 / lambda;
  return {medium.n0 + medium.kappa0 * f1(medium.gamma_hat, w),
          medium.kappa0 * f2(medium.gamma_hat, w)};
}

Reflection reflection_amplitude(Complex n, Real k, Real a) {
  if (!(k > 0) || !(a > 0)) throw DomainError("wavenumber and radius must be positive");
  const Real x = k * a;
  const Complex nx = n * x;
  const auto out = specfun::sph_bessel<Real>(kNuTransverse, Complex(x));
  const auto in = specfun::sph_bessel<Real>(kNuTransverse, nx);

  const Complex num = nx * out.h2 * in.j_prime - x * in.j * out.h2_prime;
  const Complex t1 = x * in.j * out.h1_prime;
  const Complex t2 = nx * out.h1 * in.j_prime;
  const Complex den = t1 - t2;
  const Complex amp = num / den;
  const Real mag = std::abs(amp);
  return {amp, mag * mag, std::abs(den) < kPoleRel * (std::abs(t1) + std::abs(t2))};
}

Complex ss_residual(Complex n, Real k, Real a) {
  const auto d = log_derivatives(n, k, a);
  return d.outer - d.inner;
}

Real ss_residual_rel(Complex n, Real k, Real a) {
  const auto d = log_derivatives(n, k, a);
  return std::abs(d.outer - d.inner) / (std::abs(d.outer) + std::abs(d.inner));
}

Real mode_wavelength_pert(int m, const GainMedium& medium, const SphericalResonator& res) {
  if (m < 1) throw DomainError("mode number must be >= 1");
  return 4 * medium.n0 * res.a / (2 * Real(m) + kNuTransverse + 1);
}

Real mode_gain_pert(int m, const GainMedium& medium, const SphericalResonator& res) {
  const Real lambda = mode_wavelength_pert(m, medium, res);
  return 4 * medium.n0 * log_contrast(medium.n0) /
         (medium.lambda0 * (2 * Real(m) + kNuTransverse + 1) *
          f2(medium.gamma_hat, medium.lambda0 / lambda));
}

Real mode_gain_pert_radius_form(int m, const GainMedium& medium, const SphericalResonator& res) {
  const Real lambda = mode_wavelength_pert(m, medium, res);
  const Real l0 = medium.lambda0;
  const Real r = (lambda * lambda - l0 * l0) / (l0 * lambda);
  return log_contrast(medium.n0) / res.a * (1 + r * r / (medium.gamma_hat * medium.gamma_hat));
}

Real min_radius(const GainMedium& medium, Real g0_max) {
  if (!(g0_max > 0)) throw DomainError("g0_max must be positive");
  return log_contrast(medium.n0) / g0_max;
}

ModeSolution perturbative_mode(int m, const GainMedium& medium, const SphericalResonator& res) {
  ModeSolution s;
  s.m = m;
  s.lambda_pert = mode_wavelength_pert(m, medium, res);
  s.g0_pert = mode_gain_pert(m, medium, res);
  s.lambda_exact = s.lambda_pert;
  s.g0 = s.g0_pert;
  s.x = wavenumber(s.lambda_pert) * res.a;
  const auto lin = refractive_index_linear(s.lambda_pert, medium.with_g0(s.g0_pert));
  s.eta = lin.eta;
  s.kappa = lin.kappa;
  s.asymptotic_regime = s.x > kAsymptoticX;
  return s;
}

ModeSolution solve_mode_exact(int m, const GainMedium& medium, const SphericalResonator& res,
                              std::optional<ExactSeed> seed, const SolverOptions& opts) {
  medium.validate();
  res.validate();
  ModeSolution sol = perturbative_mode(m, medium, res);
  const ExactSeed start = seed.value_or(ExactSeed{sol.lambda_pert, sol.g0_pert});
  if (!(start.lambda > 0)) throw DomainError("seed wavelength must be positive");
  if (wavenumber(start.lambda) * res.a < kAsymptoticX) {
    throw SeedOutOfRegime("seed has ka = " + std::to_string(double(wavenumber(start.lambda) * res.a)) +
                          " < " + std::to_string(double(kAsymptoticX)));
  }

  auto residual = [&](Real lambda, Real kappa0) {
    return ss_residual(refractive_index(lambda, with_kappa0(medium, kappa0)), wavenumber(lambda),
                       res.a);
  };
  auto rel = [&](Real lambda, Real kappa0) {
    return ss_residual_rel(refractive_index(lambda, with_kappa0(medium, kappa0)),
                           wavenumber(lambda), res.a);
  };

  Real lambda = start.lambda;
  Real kappa0 = kappa0_from_g0(start.g0, medium.lambda0);
  Complex r = residual(lambda, kappa0);
  Real r_norm = std::abs(r);
  const Real stop = opts.residual_tol * Real(1e-3);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (rel(lambda, kappa0) <= stop) break;

    const Real hl = opts.fd_rel_step * lambda;
    const Real hk = opts.fd_rel_step * std::max(std::abs(kappa0), Real(1e-8));
    const Complex dl = (residual(lambda + hl, kappa0) - residual(lambda - hl, kappa0)) / (2 * hl);
    const Complex dk = (residual(lambda, kappa0 + hk) - residual(lambda, kappa0 - hk)) / (2 * hk);
    const Real det = dl.real() * dk.imag() - dk.real() * dl.imag();
    if (det == 0 || !std::isfinite(det)) break;
    const Real step_l = -(dk.imag() * r.real() - dk.real() * r.imag()) / det;
    const Real step_k = -(-dl.imag() * r.real() + dl.real() * r.imag()) / det;

    Real t = 1;
    bool improved = false;
    for (int halvings = 0; halvings < 30; ++halvings, t /= 2) {
      const Real l_try = lambda + t * step_l;
      if (!(l_try > 0)) continue;
      const Complex r_try = residual(l_try, kappa0 + t * step_k);
      if (std::abs(r_try) < r_norm) {
        lambda = l_try;
        kappa0 += t * step_k;
        r = r_try;
        r_norm = std::abs(r_try);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  sol.residual_rel = rel(lambda, kappa0);
  sol.iterations = it;
  if (!(sol.residual_rel <= opts.residual_tol)) {
    throw NoConvergence("mode " + std::to_string(m) + ": relative residual " +
                        std::to_string(double(sol.residual_rel)) + " after " +
                        std::to_string(it) + " iterations");
  }
  if (std::abs(lambda - sol.lambda_pert) > opts.bracket) {
    throw NoConvergence("mode " + std::to_string(m) +
                        ": solution left the bracket around the perturbative wavelength");
  }

  const Complex n = refractive_index(lambda, with_kappa0(medium, kappa0));
  sol.lambda_exact = lambda;
  sol.g0 = -4 * kPi * kappa0 / medium.lambda0;
  sol.x = wavenumber(lambda) * res.a;
  sol.eta = n.real();
  sol.kappa = n.imag();
  sol.exact = true;
  sol.asymptotic_regime = sol.x > kAsymptoticX;
  return sol;
}

std::vector<ModeSolution> enumerate_modes(const GainMedium& medium, const SphericalResonator& res,
                                          Real g0_max, bool refine, const SolverOptions& opts) {
  medium.validate();
  res.validate();
  std::vector<ModeSolution> out;
  if (!(g0_max > 0)) return out;

  // Threshold gain is unimodal in m with its minimum where lambda_pert ~ lambda0.
  const Real m_star = (4 * medium.n0 * res.a / medium.lambda0 - kNuTransverse - 1) / 2;
  const Real m_floor = std::max(Real(1), std::floor(m_star));
  if (m_floor > Real(std::numeric_limits<int>::max() - 2)) {
    throw DomainError("mode numbers exceed the integer range");
  }
  int best = static_cast<int>(m_floor);
  if (mode_gain_pert(best + 1, medium, res) < mode_gain_pert(best, medium, res)) ++best;

  auto take = [&](int m) {
    if (mode_gain_pert(m, medium, res) > g0_max) return false;
    out.push_back(refine ? solve_mode_exact(m, medium, res, std::nullopt, opts)
                         : perturbative_mode(m, medium, res));
    return true;
  };
  if (!take(best)) return out;
  for (int m = best - 1; m >= 1 && take(m); --m) {
  }
  for (int m = best + 1; take(m); ++m) {
  }

  std::sort(out.begin(), out.end(), [](const ModeSolution& l, const ModeSolution& r) {
    if (l.g0_pert != r.g0_pert) return l.g0_pert < r.g0_pert;
    return l.m < r.m;
  });
  return out;
}

ReflectionScan scan_reflection(const GainMedium& medium, const SphericalResonator& res,
                               Real lambda_min, Real lambda_max, int points) {
  medium.validate();
  res.validate();
  if (!(lambda_min > 0) || !(lambda_max > lambda_min)) {
    throw DomainError("wavelength range must be positive and increasing");
  }
  if (points < 2) throw DomainError("scan needs at least 2 points");

  auto R_at = [&](Real lambda) {
    return reflection_amplitude(refractive_index(lambda, medium), wavenumber(lambda), res.a).R;
  };

  ReflectionScan scan;
  scan.samples.reserve(static_cast<std::size_t>(points));
  const Real h = (lambda_max - lambda_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const Real lambda = i == points - 1 ? lambda_max : lambda_min + h * i;
    scan.samples.push_back({lambda, R_at(lambda)});
  }

  const auto& s = scan.samples;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i].R > s[i - 1].R && s[i].R >= s[i + 1].R)) continue;
    // Optimize over the offset from the grid point, in grid units, so the
    // tolerance scales with the distance to the pole rather than with lambda.
    const Real center = s[i].lambda;
    auto neg_log_R = [&](Real u) { return -std::log(R_at(center + u * h)); };
    const auto [u_best, f_best] = boost::math::tools::brent_find_minima(
        neg_log_R, Real(-1), Real(1), std::numeric_limits<Real>::digits / 2);
    const Real R_best = std::exp(-f_best);
    if (R_best >= s[i].R) {
      scan.peaks.push_back({center + u_best * h, R_best});
    } else {
      scan.peaks.push_back(s[i]);
    }
  }
  std::stable_sort(scan.peaks.begin(), scan.peaks.end(),
                   [](const ScanSample& l, const ScanSample& r) { return l.R > r.R; });
  return scan;
}

}  // namespace specsing::sphere
