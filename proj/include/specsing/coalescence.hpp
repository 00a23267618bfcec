#pragma once

// One-parameter family nu = (1 + eps/4) mu^2 of Case-I point interactions,
// along which two roots of M22 coalesce at eps = 0.

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "specsing/point_core.hpp"

namespace specsing::coalescence {

using point::SpectralPoint;

/// k_plus = -i(1 + sqrt(-eps)/2) mu, k_minus = -i(1 - sqrt(-eps)/2) mu.
struct KPair {
  cplx k_plus;
  cplx k_minus;
};

/// Branch values from the piecewise real/imaginary closed forms.
/// Throws DomainError if Re(mu) > 0 or eps is outside [-1, 1].
KPair k_pair(cplx mu, double eps);

/// nu of the family at a given eps.
cplx family_nu(cplx mu, double eps);

/// Matching matrix with b = 1, a = d = mu, c = nu; its M22 zeros are the
/// family's k values.
point::MatchingMatrix embed(cplx mu, cplx nu);

enum class CriticalEvent { Coalescence, BoundStateBecomesSS };

std::string_view to_string(CriticalEvent e);

struct CriticalPoint {
  double eps;
  CriticalEvent event;
};

std::vector<CriticalPoint> critical_epsilons(cplx mu);

struct ScanRow {
  double eps;
  SpectralPoint plus;
  SpectralPoint minus;
};

struct CoalescenceScan {
  cplx mu;
  std::vector<ScanRow> rows;  ///< in grid order
};

/// `steps` evenly spaced points from eps_min to eps_max inclusive.
std::vector<double> epsilon_grid(double eps_min, double eps_max, int steps);

CoalescenceScan sweep(cplx mu, std::span<const double> grid,
                      const Tolerances& tol = kDefaultTolerances);

/// eps,re_k_plus,im_k_plus,kind_plus,re_k_minus,im_k_minus,kind_minus
void write_csv(std::ostream& os, const CoalescenceScan& scan);

}  // namespace specsing::coalescence
