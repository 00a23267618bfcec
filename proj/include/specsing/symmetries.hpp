#pragma once

// Parity, time-reversal and PT invariance of a matching matrix, the
// explicit PT-symmetric family, and the spectral classification of that
// family.

#include <optional>
#include <string_view>
#include <vector>

#include "specsing/point_core.hpp"

namespace specsing::sym {

using point::MatchingMatrix;
using point::SpectralPoint;

struct SymmetryCheck {
  bool holds;
  double residual;  ///< max-norm defect of the operator condition
};

struct SymmetryReport {
  bool p_symmetric;
  bool t_symmetric;
  bool pt_symmetric;
  double p_residual;
  double t_residual;
  double pt_residual;
};

/// tol.sym_rel * (1 + ||B||max).
double symmetry_threshold(const MatchingMatrix& B, const Tolerances& tol = kDefaultTolerances);

/// P-invariance: ||B sigma3 B - sigma3||max.
SymmetryCheck check_P(const MatchingMatrix& B, const Tolerances& tol = kDefaultTolerances);

/// P-invariance via the entry conditions a^2 - bc = 1, d = +-a,
/// b(a-d) = c(a-d) = 0. Must agree with check_P.
SymmetryCheck check_P_entrywise(const MatchingMatrix& B,
                                const Tolerances& tol = kDefaultTolerances);

/// T-invariance: B real.
SymmetryCheck check_T(const MatchingMatrix& B, const Tolerances& tol = kDefaultTolerances);

/// PT-invariance: ||conj(B) sigma3 B - sigma3||max.
SymmetryCheck check_PT(const MatchingMatrix& B, const Tolerances& tol = kDefaultTolerances);

SymmetryReport symmetry_report(const MatchingMatrix& B,
                               const Tolerances& tol = kDefaultTolerances);

/// Generator of a PT-symmetric matching matrix.
struct PTParameters {
  double alpha = 0.0;  ///< [0, 2pi)
  double delta = 0.0;  ///< [0, 2pi)
  double b = 0.0;      ///< >= 0
  double c = 0.0;      ///< >= 0
  int eps1 = +1;       ///< must be +1 when b c >= 1
  int eps2 = +1;
};

/// Throws InvalidParameters on any violated invariant.
void validate(const PTParameters& p);

MatchingMatrix build_PT(const PTParameters& p);

enum class PTCase { I, IIa, IIb };

enum class PTSubcase {
  SpectralSingularityPair,  ///< eps1 = +1, delta = alpha + pi (mod 2pi)
  BoundRealPair,            ///< mu < 0, mu^2 - nu > 0
  ExceptionalPoint,         ///< mu < 0, mu^2 = nu
  BoundComplexPair,         ///< mu < 0, mu^2 - nu < 0
  NoBoundRegime,            ///< mu >= 0 outside the SS family
  CaseIIaBound,             ///< eps2 cos((alpha-delta)/2) < 0
  CaseIIaNoBound,
  CaseIIbAllReal,           ///< c = 0
  CaseIIbEmpty,
};

std::string_view to_string(PTCase c);
std::string_view to_string(PTSubcase s);

struct PTClassification {
  PTCase pt_case;
  PTSubcase subcase;
  std::optional<double> mu;            ///< Case I only, from the built entries
  std::optional<double> nu;
  std::optional<double> discriminant;  ///< mu^2 - nu
  /// (-1)^l eps2 for the SS family (delta = alpha + (2l+1) pi); 0 otherwise.
  int ss_sign = 0;
  std::vector<cplx> bound_energies;  ///< k^2 of every root with Im k > 0
  std::vector<SpectralPoint> points;
};

/// Closed-form spectrum of the PT family. Roots are produced from the real
/// mu, nu of the built matrix and classified with point::classify_root, so
/// they coincide with point::spectrum(build_PT(p)).
PTClassification pt_classify(const PTParameters& p, const Tolerances& tol = kDefaultTolerances);

}  // namespace specsing::sym
