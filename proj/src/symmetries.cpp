#include "specsing/symmetries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specsing/errors.hpp"

namespace specsing::sym {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Mat2 {
  cplx m11, m12, m21, m22;
};

// X sigma3 Y for 2x2 X, Y.
Mat2 sandwich_sigma3(const Mat2& X, const Mat2& Y) {
  return {X.m11 * Y.m11 - X.m12 * Y.m21, X.m11 * Y.m12 - X.m12 * Y.m22,
          X.m21 * Y.m11 - X.m22 * Y.m21, X.m21 * Y.m12 - X.m22 * Y.m22};
}

double defect_from_sigma3(const Mat2& M) {
  return std::max({std::abs(M.m11 - 1.0), std::abs(M.m12), std::abs(M.m21),
                   std::abs(M.m22 + 1.0)});
}

Mat2 as_mat(const MatchingMatrix& B) { return {B.a, B.b, B.c, B.d}; }

bool congruent_mod_2pi(double x, double y, double tol) {
  return std::abs(std::remainder(x - y, kTwoPi)) <= tol;
}

}  // namespace

double symmetry_threshold(const MatchingMatrix& B, const Tolerances& tol) {
  return tol.sym_rel * (1.0 + B.norm_max());
}

SymmetryCheck check_P(const MatchingMatrix& B, const Tolerances& tol) {
  const Mat2 M = as_mat(B);
  const double r = defect_from_sigma3(sandwich_sigma3(M, M));
  return {r <= symmetry_threshold(B, tol), r};
}

SymmetryCheck check_P_entrywise(const MatchingMatrix& B, const Tolerances& tol) {
  const cplx diff = B.a - B.d;
  const double r = std::max({std::abs(B.a * B.a - B.b * B.c - 1.0),
                             std::min(std::abs(diff), std::abs(B.a + B.d)),
                             std::abs(B.b * diff), std::abs(B.c * diff)});
  return {r <= symmetry_threshold(B, tol), r};
}

SymmetryCheck check_T(const MatchingMatrix& B, const Tolerances& tol) {
  const double r = std::max({std::abs(B.a.imag()), std::abs(B.b.imag()), std::abs(B.c.imag()),
                             std::abs(B.d.imag())});
  return {r <= symmetry_threshold(B, tol), r};
}

SymmetryCheck check_PT(const MatchingMatrix& B, const Tolerances& tol) {
  const Mat2 M = as_mat(B);
  const Mat2 Mc{std::conj(M.m11), std::conj(M.m12), std::conj(M.m21), std::conj(M.m22)};
  const double r = defect_from_sigma3(sandwich_sigma3(Mc, M));
  return {r <= symmetry_threshold(B, tol), r};
}

SymmetryReport symmetry_report(const MatchingMatrix& B, const Tolerances& tol) {
  const auto p = check_P(B, tol);
  const auto t = check_T(B, tol);
  const auto pt = check_PT(B, tol);
  return {p.holds, t.holds, pt.holds, p.residual, t.residual, pt.residual};
}

void validate(const PTParameters& p) {
  auto fail = [](const std::string& what) { throw InvalidParameters("PTParameters: " + what); };
  if (!(p.alpha >= 0.0 && p.alpha < kTwoPi)) fail("alpha must lie in [0, 2pi)");
  if (!(p.delta >= 0.0 && p.delta < kTwoPi)) fail("delta must lie in [0, 2pi)");
  if (!(p.b >= 0.0) || !std::isfinite(p.b)) fail("b must be a finite nonnegative real");
  if (!(p.c >= 0.0) || !std::isfinite(p.c)) fail("c must be a finite nonnegative real");
  if (p.eps1 != 1 && p.eps1 != -1) fail("eps1 must be +1 or -1");
  if (p.eps2 != 1 && p.eps2 != -1) fail("eps2 must be +1 or -1");
  if (p.b * p.c >= 1.0 && p.eps1 != 1) fail("eps1 must be +1 when b*c >= 1");
}

MatchingMatrix build_PT(const PTParameters& p) {
  validate(p);
  const double root = std::sqrt(1.0 + p.eps1 * p.b * p.c);
  const cplx half_sum = std::polar(1.0, 0.5 * (p.alpha + p.delta));
  return {
      root * std::polar(1.0, p.alpha),
      static_cast<double>(p.eps1 * p.eps2) * p.b * half_sum,
      static_cast<double>(p.eps2) * p.c * half_sum,
      root * std::polar(1.0, p.delta),
  };
}

std::string_view to_string(PTCase c) {
  switch (c) {
    case PTCase::I: return "I";
    case PTCase::IIa: return "IIa";
    case PTCase::IIb: return "IIb";
  }
  return "?";
}

std::string_view to_string(PTSubcase s) {
  switch (s) {
    case PTSubcase::SpectralSingularityPair: return "SpectralSingularityPair";
    case PTSubcase::BoundRealPair: return "BoundRealPair";
    case PTSubcase::ExceptionalPoint: return "ExceptionalPoint";
    case PTSubcase::BoundComplexPair: return "BoundComplexPair";
    case PTSubcase::NoBoundRegime: return "NoBoundRegime";
    case PTSubcase::CaseIIaBound: return "CaseIIaBound";
    case PTSubcase::CaseIIaNoBound: return "CaseIIaNoBound";
    case PTSubcase::CaseIIbAllReal: return "CaseIIbAllReal";
    case PTSubcase::CaseIIbEmpty: return "CaseIIbEmpty";
  }
  return "?";
}

PTClassification pt_classify(const PTParameters& p, const Tolerances& tol) {
  const MatchingMatrix B = build_PT(p);
  const double zero = tol.case_rel * (1.0 + B.norm_max());
  const double half_diff = 0.5 * (p.alpha - p.delta);

  PTClassification out{};
  auto add_root = [&](cplx k, int order) {
    out.points.push_back(point::classify_root(k, order, tol));
    if (out.points.back().kind == point::SpectralKind::BoundState) {
      out.bound_energies.push_back(k * k);
    }
  };

  if (std::abs(B.b) > zero) {
    out.pt_case = PTCase::I;
    const cplx mu_c = B.trace() / (2.0 * B.b);
    const cplx nu_c = B.c / B.b;
    if (std::abs(mu_c.imag()) > tol.sym_rel * (1.0 + std::abs(mu_c)) ||
        std::abs(nu_c.imag()) > tol.sym_rel * (1.0 + std::abs(nu_c))) {
      throw std::logic_error("PT family produced non-real mu or nu");
    }
    const bool ss_family =
        p.eps1 == 1 && congruent_mod_2pi(p.delta, p.alpha + std::numbers::pi, tol.angle);
    const double mu = ss_family ? 0.0 : mu_c.real();
    const double nu = nu_c.real();
    const double disc = mu * mu - nu;
    out.mu = mu;
    out.nu = nu;
    out.discriminant = disc;

    const bool double_root = std::abs(disc) <= tol.disc_rel * (1.0 + mu * mu);
    if (double_root) {
      add_root(-I * mu, 2);
    } else if (disc > 0.0) {
      const double s = std::sqrt(disc);
      add_root(-I * (mu + s), 1);
      add_root(-I * (mu - s), 1);
    } else {
      const double s = std::sqrt(-disc);
      add_root(cplx{s, -mu}, 1);
      add_root(cplx{-s, -mu}, 1);
    }

    if (ss_family) {
      out.subcase = PTSubcase::SpectralSingularityPair;
      // delta - alpha = (2l+1) pi with alpha, delta in [0, 2pi) leaves l in {0, -1}.
      out.ss_sign = (p.delta > p.alpha ? 1 : -1) * p.eps2;
    } else if (mu < -tol.class_rel * (1.0 + std::abs(mu))) {
      out.subcase = double_root ? PTSubcase::ExceptionalPoint
                    : disc > 0.0 ? PTSubcase::BoundRealPair
                                 : PTSubcase::BoundComplexPair;
    } else {
      out.subcase = PTSubcase::NoBoundRegime;
    }
    return out;
  }

  if (std::abs(B.trace()) > zero) {
    out.pt_case = PTCase::IIa;
    const double cos_half = std::cos(half_diff);
    add_root(-I * (p.eps2 * p.c / (2.0 * cos_half)), 1);
    out.subcase = (p.c > 0.0 && p.eps2 * cos_half < 0.0) ? PTSubcase::CaseIIaBound
                                                         : PTSubcase::CaseIIaNoBound;
    return out;
  }

  out.pt_case = PTCase::IIb;
  if (std::abs(B.c) <= zero) {
    out.points.push_back({cplx{0.0}, point::SpectralKind::AllRealK, 1});
    out.subcase = PTSubcase::CaseIIbAllReal;
  } else {
    out.subcase = PTSubcase::CaseIIbEmpty;
  }
  return out;
}

}  // namespace specsing::sym
