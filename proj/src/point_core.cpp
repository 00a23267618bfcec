#include "specsing/point_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specsing/errors.hpp"

namespace specsing::point {

namespace {

constexpr cplx I{0.0, 1.0};

void require_nonzero(cplx k, const Tolerances& tol) {
  if (std::abs(k) <= tol.class_rel * (1.0 + std::abs(k))) {
    throw DegenerateWavenumber("wavenumber k is zero to within tolerance");
  }
}

double case_threshold(const MatchingMatrix& B, const Tolerances& tol) {
  return tol.case_rel * (1.0 + B.norm_max());
}

bool is_double_root(cplx mu, cplx disc, const Tolerances& tol) {
  return std::abs(disc) <= tol.disc_rel * (1.0 + std::norm(mu));
}

}  // namespace

double MatchingMatrix::norm_max() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

std::string_view to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::SpectralSingularity: return "SpectralSingularity";
    case SpectralKind::BoundState: return "BoundState";
    case SpectralKind::GrowingSolution: return "GrowingSolution";
    case SpectralKind::ThresholdArtifact: return "ThresholdArtifact";
    case SpectralKind::AllRealK: return "AllRealK";
  }
  return "?";
}

SpectralKind spectral_kind_from_string(std::string_view name) {
  for (auto kind : {SpectralKind::SpectralSingularity, SpectralKind::BoundState,
                    SpectralKind::GrowingSolution, SpectralKind::ThresholdArtifact,
                    SpectralKind::AllRealK}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown spectral kind '" + std::string(name) + "'");
}

std::string_view to_string(PointCase c) {
  switch (c) {
    case PointCase::I: return "I";
    case PointCase::Ia: return "Ia";
    case PointCase::Ib: return "Ib";
    case PointCase::Ic: return "Ic";
    case PointCase::IIa: return "IIa";
    case PointCase::IIb: return "IIb";
  }
  return "?";
}

PointCase point_case_from_string(std::string_view name) {
  for (auto c : {PointCase::I, PointCase::Ia, PointCase::Ib, PointCase::Ic, PointCase::IIa,
                 PointCase::IIb}) {
    if (to_string(c) == name) return c;
  }
  throw ParseError("unknown case label '" + std::string(name) + "'");
}

TransferMatrix transfer_matrix(const MatchingMatrix& B, cplx k, const Tolerances& tol) {
  require_nonzero(k, tol);
  const cplx pref = -I / (2.0 * k);
  const cplx bk2 = B.b * k * k;
  const cplx sum_k = I * (B.a + B.d) * k;
  const cplx diff_k = I * (B.a - B.d) * k;
  return TransferMatrix{
      pref * (-bk2 + sum_k + B.c),
      pref * (bk2 + diff_k + B.c),
      pref * (-bk2 + diff_k - B.c),
      pref * (bk2 + sum_k - B.c),
      k,
  };
}

cplx zero_polynomial(const MatchingMatrix& B, cplx k) {
  return B.b * k * k + I * (B.a + B.d) * k - B.c;
}

cplx m22(const MatchingMatrix& B, cplx k, const Tolerances& tol) {
  require_nonzero(k, tol);
  return -I / (2.0 * k) * zero_polynomial(B, k);
}

SpectralPoint classify_root(cplx k, int order, const Tolerances& tol) {
  const double t = tol.class_rel * (1.0 + std::abs(k));
  SpectralKind kind;
  if (std::abs(k) <= t) {
    kind = SpectralKind::ThresholdArtifact;
  } else if (std::abs(k.imag()) <= t) {
    kind = std::abs(k.real()) > t ? SpectralKind::SpectralSingularity
                                  : SpectralKind::ThresholdArtifact;
  } else if (k.imag() > 0.0) {
    kind = SpectralKind::BoundState;
  } else {
    kind = SpectralKind::GrowingSolution;
  }
  return {k, kind, order};
}

PointCase classify_case(const MatchingMatrix& B, const Tolerances& tol) {
  const double zero = case_threshold(B, tol);
  if (std::abs(B.b) > zero) {
    const cplx mu = B.trace() / (2.0 * B.b);
    const cplx nu = B.c / B.b;
    if (is_double_root(mu, mu * mu - nu, tol)) return PointCase::Ic;
    if (std::abs(B.trace()) <= zero) return PointCase::Ia;
    if (std::abs(B.c) <= zero) return PointCase::Ib;
    return PointCase::I;
  }
  return std::abs(B.trace()) > zero ? PointCase::IIa : PointCase::IIb;
}

std::vector<SpectralPoint> spectrum(const MatchingMatrix& B, const Tolerances& tol) {
  const double zero = case_threshold(B, tol);
  std::vector<SpectralPoint> out;

  if (std::abs(B.b) > zero) {
    // b k^2 + i(a+d)k - c = 0 with k = -i r  <=>  r^2 - 2 mu r + nu = 0.
    const cplx mu = B.trace() / (2.0 * B.b);
    const cplx nu = B.c / B.b;
    const cplx disc = mu * mu - nu;
    if (is_double_root(mu, disc, tol)) {
      out.push_back(classify_root(-I * mu, 2, tol));
      return out;
    }
    const cplx s = std::sqrt(disc);
    // Larger-magnitude root first, companion from the product of roots.
    const bool plus_is_large = (std::conj(mu) * s).real() >= 0.0;
    const cplx large = plus_is_large ? mu + s : mu - s;
    const cplx small = nu / large;
    const cplx r_plus = plus_is_large ? large : small;
    const cplx r_minus = plus_is_large ? small : large;
    out.push_back(classify_root(-I * r_plus, 1, tol));
    out.push_back(classify_root(-I * r_minus, 1, tol));
    return out;
  }

  if (std::abs(B.trace()) > zero) {
    // c = 0 leaves M22 = (a+d)/2, which has no zero at all.
    if (std::abs(B.c) <= zero) return out;
    out.push_back(classify_root(-I * B.c / B.trace(), 1, tol));
    return out;
  }

  // tr B = 0, b = 0: M = a sigma_1 is k-independent; M22 == 0 iff c == 0.
  if (std::abs(B.c) <= zero) out.push_back({cplx{0.0}, SpectralKind::AllRealK, 1});
  return out;
}

AmplitudePair propagate(const MatchingMatrix& B, cplx k, const AmplitudePair& left,
                        const Tolerances& tol) {
  const TransferMatrix M = transfer_matrix(B, k, tol);
  return {M.m11 * left.A + M.m12 * left.B, M.m21 * left.A + M.m22 * left.B};
}

AnomalyReport classify_anomalous(const MatchingMatrix& B, const Tolerances& tol) {
  const cplx det = B.det();
  return {det, std::abs(det - 1.0) > tol.det, det == cplx{0.0}};
}

}  // namespace specsing::point
