#pragma once

// Single-point complex interaction defined by the matching condition
// Psi_+(0) = B Psi_-(0), its plane-wave transfer matrix, and the zeros of
// M22 (spectral singularities and bound states).

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace specsing {

using cplx = std::complex<double>;

/// Numerical tolerances shared by the point-interaction modules.
struct Tolerances {
  double class_rel = 1e-9;  ///< real-axis / zero classification, scaled by (1+|k|)
  double det = 1e-9;        ///< |det B - 1| threshold for anomalous interactions
  double disc_rel = 1e-9;   ///< double-root threshold, scaled by (1+|mu|^2)
  double sym_rel = 1e-10;   ///< symmetry residual threshold, scaled by (1+||B||max)
  double angle = 1e-10;     ///< angular congruence tolerance (radians)
  double case_rel = 1e-14;  ///< b = 0 and tr B = 0 case selection, scaled by (1+||B||max)
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace specsing

namespace specsing::point {

/// The four couplings of the matching matrix B = [[a, b], [c, d]].
struct MatchingMatrix {
  cplx a{1.0};
  cplx b{0.0};
  cplx c{0.0};
  cplx d{1.0};

  [[nodiscard]] cplx det() const { return a * d - b * c; }
  [[nodiscard]] cplx trace() const { return a + d; }
  /// Largest entry modulus.
  [[nodiscard]] double norm_max() const;

  static MatchingMatrix identity() { return {}; }
  /// Delta-function potential with coupling z: (1, 0, z, 1).
  static MatchingMatrix delta(cplx z) { return {1.0, 0.0, z, 1.0}; }

  friend bool operator==(const MatchingMatrix&, const MatchingMatrix&) = default;
};

/// M such that (A+, B+) = M (A-, B-) for psi = A e^{ikx} + B e^{-ikx}.
struct TransferMatrix {
  cplx m11, m12, m21, m22;
  cplx k;

  [[nodiscard]] cplx det() const { return m11 * m22 - m12 * m21; }
};

/// Plane-wave coefficients on one side of the junction.
struct AmplitudePair {
  cplx A;  ///< right-moving, e^{ikx}
  cplx B;  ///< left-moving, e^{-ikx}
};

enum class SpectralKind {
  SpectralSingularity,
  BoundState,
  GrowingSolution,
  ThresholdArtifact,
  AllRealK,
};

std::string_view to_string(SpectralKind kind);
/// Inverse of to_string; throws ParseError for unknown names.
SpectralKind spectral_kind_from_string(std::string_view name);

struct SpectralPoint {
  cplx k;
  SpectralKind kind;
  int order = 1;  ///< 2 for a double root of M22
};

/// Which branch of the case analysis a matching matrix falls into.
enum class PointCase { I, Ia, Ib, Ic, IIa, IIb };

std::string_view to_string(PointCase c);
PointCase point_case_from_string(std::string_view name);

/// Explicit closed-form transfer matrix; throws DegenerateWavenumber for |k| ~ 0.
TransferMatrix transfer_matrix(const MatchingMatrix& B, cplx k,
                               const Tolerances& tol = kDefaultTolerances);

/// M22 = (-i/2k)(b k^2 + i(a+d)k - c).
cplx m22(const MatchingMatrix& B, cplx k, const Tolerances& tol = kDefaultTolerances);

/// Left-hand side of the zero condition, b k^2 + i(a+d) k - c.
cplx zero_polynomial(const MatchingMatrix& B, cplx k);

/// Classify a single root of M22 by where it sits in the complex k-plane.
SpectralPoint classify_root(cplx k, int order = 1, const Tolerances& tol = kDefaultTolerances);

/// Case label (I, Ia, Ib, Ic, IIa, IIb).
PointCase classify_case(const MatchingMatrix& B, const Tolerances& tol = kDefaultTolerances);

/// All zeros of M22, classified. Case II.b with c = 0 yields a single
/// AllRealK marker; with c != 0 the list is empty.
std::vector<SpectralPoint> spectrum(const MatchingMatrix& B,
                                    const Tolerances& tol = kDefaultTolerances);

AmplitudePair propagate(const MatchingMatrix& B, cplx k, const AmplitudePair& left,
                        const Tolerances& tol = kDefaultTolerances);

struct AnomalyReport {
  cplx det;
  bool anomalous;  ///< |det - 1| > tol.det
  bool singular;   ///< det == 0 exactly
};

AnomalyReport classify_anomalous(const MatchingMatrix& B,
                                 const Tolerances& tol = kDefaultTolerances);

}  // namespace specsing::point
