#include "specsing/coalescence.hpp"

#include <cmath>
#include <ostream>

#include "specsing/csv.hpp"
#include "specsing/errors.hpp"

namespace specsing::coalescence {

namespace {

void require_domain(cplx mu) {
  if (!(mu.real() <= 0.0)) throw DomainError("coalescence family requires Re(mu) <= 0");
}

void require_eps(double eps) {
  if (!(eps >= -1.0 && eps <= 1.0)) throw DomainError("eps must lie in [-1, 1]");
}

}  // namespace

KPair k_pair(cplx mu, double eps) {
  require_domain(mu);
  require_eps(eps);
  const double mr = mu.real();
  const double mi = mu.imag();
  if (eps < 0.0) {
    const double s = 0.5 * std::sqrt(-eps);
    return {{(1.0 + s) * mi, -(1.0 + s) * mr}, {(1.0 - s) * mi, -(1.0 - s) * mr}};
  }
  if (eps == 0.0) return {{mi, -mr}, {mi, -mr}};
  const double s = 0.5 * std::sqrt(eps);
  return {{mi + s * mr, -mr + s * mi}, {mi - s * mr, -mr - s * mi}};
}

cplx family_nu(cplx mu, double eps) { return (1.0 + 0.25 * eps) * mu * mu; }

point::MatchingMatrix embed(cplx mu, cplx nu) { return {mu, 1.0, nu, mu}; }

std::string_view to_string(CriticalEvent e) {
  switch (e) {
    case CriticalEvent::Coalescence: return "Coalescence";
    case CriticalEvent::BoundStateBecomesSS: return "BoundStateBecomesSS";
  }
  return "?";
}

std::vector<CriticalPoint> critical_epsilons(cplx mu) {
  require_domain(mu);
  std::vector<CriticalPoint> out{{0.0, CriticalEvent::Coalescence}};
  const double mr = mu.real();
  const double mi = mu.imag();
  // One branch crosses the real axis where |mu_i sqrt(eps)| = -2 mu_r.
  if (mr < 0.0 && mi != 0.0) {
    const double eps = 4.0 * mr * mr / (mi * mi);
    if (eps <= 1.0) out.push_back({eps, CriticalEvent::BoundStateBecomesSS});
  }
  return out;
}

std::vector<double> epsilon_grid(double eps_min, double eps_max, int steps) {
  if (steps < 1) throw DomainError("epsilon grid needs at least one point");
  if (!(eps_min <= eps_max)) throw DomainError("epsilon grid bounds out of order");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid[0] = eps_min;
    return grid;
  }
  const double span = eps_max - eps_min;
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = eps_min + span * i / (steps - 1);
  }
  grid.back() = eps_max;
  return grid;
}

CoalescenceScan sweep(cplx mu, std::span<const double> grid, const Tolerances& tol) {
  require_domain(mu);
  CoalescenceScan scan{mu, {}};
  scan.rows.reserve(grid.size());
  for (double eps : grid) {
    const KPair kp = k_pair(mu, eps);
    const cplx disc = -0.25 * eps * mu * mu;
    const int order = std::abs(disc) <= tol.disc_rel * (1.0 + std::norm(mu)) ? 2 : 1;
    scan.rows.push_back({eps, point::classify_root(kp.k_plus, order, tol),
                         point::classify_root(kp.k_minus, order, tol)});
  }
  return scan;
}

void write_csv(std::ostream& os, const CoalescenceScan& scan) {
  os << "eps,re_k_plus,im_k_plus,kind_plus,re_k_minus,im_k_minus,kind_minus\n";
  for (const auto& row : scan.rows) {
    os << format_g12(row.eps) << ',' << format_g12(row.plus.k.real()) << ','
       << format_g12(row.plus.k.imag()) << ',' << point::to_string(row.plus.kind) << ','
       << format_g12(row.minus.k.real()) << ',' << format_g12(row.minus.k.imag()) << ','
       << point::to_string(row.minus.kind) << '\n';
  }
}

}  // namespace specsing::coalescence
