// Acceptance criteria. Prints one PASS/FAIL line per criterion; exits
// nonzero if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "specsing/coalescence.hpp"
#include "specsing/errors.hpp"
#include "specsing/gain_sphere.hpp"
#include "specsing/point_core.hpp"
#include "specsing/specfun.hpp"
#include "specsing/symmetries.hpp"

using namespace specsing;
using point::MatchingMatrix;
using point::SpectralKind;

namespace {

constexpr cplx I{0.0, 1.0};

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Mat2 = std::array<cplx, 4>;

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// N^-1 B N with N = [[1, 1], [ik, -ik]].
Mat2 conjugated(const MatchingMatrix& B, cplx k) {
  const Mat2 N{1.0, 1.0, I * k, -I * k};
  const cplx det = -2.0 * I * k;
  const Mat2 Ninv{N[3] / det, -N[1] / det, -N[2] / det, N[0] / det};
  return mul(mul(Ninv, {B.a, B.b, B.c, B.d}), N);
}

double max_abs(const Mat2& m) {
  double r = 0;
  for (const auto& e : m) r = std::max(r, std::abs(e));
  return r;
}

// ---------------------------------------------------------------------------

Outcome delta_interaction() {
  Outcome o;
  const auto B1 = MatchingMatrix::delta(2.0 * I);
  const auto s1 = point::spectrum(B1);
  o.require(s1.size() == 1, "z=2i: expected one root");
  if (s1.size() == 1) {
    o.require(s1[0].kind == SpectralKind::SpectralSingularity, "z=2i: not an SS");
    o.require(std::abs(s1[0].k - 1.0) <= 1e-12, "z=2i: k != 1");
    o.require(std::abs(point::m22(B1, s1[0].k)) <= 1e-12, "z=2i: residual");
  }
  const auto B2 = MatchingMatrix::delta(-2.0);
  const auto s2 = point::spectrum(B2);
  o.require(s2.size() == 1, "z=-2: expected one root");
  if (s2.size() == 1) {
    o.require(s2[0].kind == SpectralKind::BoundState, "z=-2: not a bound state");
    o.require(std::abs(s2[0].k - I) <= 1e-12, "z=-2: k != i");
    o.require(std::abs(point::m22(B2, s2[0].k)) <= 1e-12, "z=-2: residual");
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rc = [&] { return cplx{u(rng), u(rng)}; };
  for (int n = 0; n < 10000 && o.ok; ++n) {
    const MatchingMatrix B{rc(), rc(), rc(), rc()};
    cplx k = rc();
    if (std::abs(k) < 0.1) k += 0.5;
    const auto M = point::transfer_matrix(B, k);
    const Mat2 ref = conjugated(B, k);
    const double scale = 1.0 + max_abs(ref);
    o.require(std::abs(M.det() - B.det()) <= 1e-12 * scale * scale, "det(M) != det(B)");
    o.require(max_abs({M.m11 - ref[0], M.m12 - ref[1], M.m21 - ref[2], M.m22 - ref[3]}) <=
                  1e-12 * scale,
              "closed form differs from N^-1 B N");

    // Real B: the root set is closed under k -> -conj(k).
    const MatchingMatrix R{u(rng), u(rng), u(rng), u(rng)};
    const auto s = point::spectrum(R);
    for (const auto& p : s) {
      if (p.kind == SpectralKind::AllRealK) continue;
      const cplx mirror = -std::conj(p.k);
      bool found = false;
      for (const auto& q : s) found |= std::abs(q.k - mirror) <= 1e-10 * (1.0 + std::abs(p.k));
      o.require(found, "T-symmetric root set not closed under k -> -k*");
    }
  }
  return o;
}

Outcome pt_construction() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), mag(0.0, 3.0);
  std::bernoulli_distribution coin;
  const Mat2 s3{1.0, 0.0, 0.0, -1.0};
  for (int n = 0; n < 1000 && o.ok; ++n) {
    sym::PTParameters p;
    p.alpha = ang(rng);
    p.delta = ang(rng);
    p.b = mag(rng);
    p.c = mag(rng);
    p.eps2 = coin(rng) ? 1 : -1;
    p.eps1 = (p.b * p.c >= 1.0 || coin(rng)) ? 1 : -1;
    const auto B = sym::build_PT(p);
    const Mat2 Bm{B.a, B.b, B.c, B.d};
    const Mat2 Bc{std::conj(B.a), std::conj(B.b), std::conj(B.c), std::conj(B.d)};
    const Mat2 lhs = mul(mul(Bc, s3), Bm);
    o.require(max_abs({lhs[0] - 1.0, lhs[1], lhs[2], lhs[3] + 1.0}) <= 1e-12, "B* s3 B != s3");
    o.require(std::abs(B.det() - std::polar(1.0, p.alpha + p.delta)) <= 1e-12,
              "det B != exp(i(alpha+delta))");
  }
  // Spectral singularity family: delta = alpha + pi, eps1 = +1.
  std::uniform_real_distribution<double> pos(0.05, 3.0);
  for (int n = 0; n < 1000 && o.ok; ++n) {
    sym::PTParameters p;
    p.alpha = ang(rng);
    p.delta = std::fmod(p.alpha + std::numbers::pi, 2 * std::numbers::pi);
    p.b = pos(rng);
    p.c = pos(rng);
    p.eps1 = 1;
    p.eps2 = coin(rng) ? 1 : -1;
    const auto cls = sym::pt_classify(p);
    o.require(cls.mu.has_value() && std::abs(*cls.mu) <= 1e-12, "SS family: mu != 0");
    const double k0 = std::sqrt(p.c / p.b);
    bool hit = false;
    for (const auto& q : point::spectrum(sym::build_PT(p))) {
      hit |= q.kind == SpectralKind::SpectralSingularity && std::abs(q.k - k0) <= 1e-12 * (1 + k0);
    }
    o.require(hit, "SS family: no SS at sqrt(c/b)");
  }
  return o;
}

Outcome coalescence_scenarios() {
  using namespace coalescence;
  Outcome o;
  const cplx mu{-1.0, 4.0};
  const auto crit = critical_epsilons(mu);
  o.require(crit.size() == 2, "mu=-1+4i: expected two critical values");
  if (crit.size() == 2) {
    o.require(std::abs(crit[0].eps) <= 1e-12 && std::abs(crit[1].eps - 0.25) <= 1e-12,
              "critical values != {0, 0.25}");
  }
  const std::vector<double> g{0.0, 0.25};
  const auto scan = sweep(mu, g);
  const auto& z = scan.rows[0];
  o.require(z.plus.order == 2 && z.plus.kind == SpectralKind::BoundState &&
                std::abs(z.plus.k - cplx{4.0, 1.0}) <= 1e-12,
            "eps=0: not an order-2 bound state at 4+i");
  const auto& q = scan.rows[1];
  o.require(std::abs(q.plus.k - cplx{3.75, 2.0}) <= 1e-12 && std::abs(q.minus.k - 4.25) <= 1e-12,
            "eps=0.25: branch values");
  const int ss = (q.plus.kind == SpectralKind::SpectralSingularity) +
                 (q.minus.kind == SpectralKind::SpectralSingularity);
  o.require(ss == 1, "eps=0.25: expected exactly one SS");

  const std::vector<double> g2{-1.0, 0.0};
  const auto s2 = sweep(2.0 * I, g2);
  const auto& a = s2.rows[0];
  o.require(a.plus.kind == SpectralKind::SpectralSingularity &&
                a.minus.kind == SpectralKind::SpectralSingularity,
            "mu=2i, eps=-1: expected two SS");
  o.require(std::abs(a.plus.k - 3.0) <= 1e-12 && std::abs(a.minus.k - 1.0) <= 1e-12,
            "mu=2i, eps=-1: k != {3, 1}");
  const auto& b = s2.rows[1];
  o.require(b.plus.kind == SpectralKind::SpectralSingularity && b.plus.order == 2 &&
                std::abs(b.plus.k - 2.0) <= 1e-12,
            "mu=2i, eps=0: not an order-2 SS at 2");
  return o;
}

Outcome special_functions() {
  using namespace specfun;
  using C = std::complex<double>;
  Outcome o;
  const double nu = std::sqrt(5.0) / 2;
  std::vector<C> grid;
  for (int i = 0; i < 60; ++i) {
    const double r = 0.5 * std::pow(2e5, i / 59.0);
    const double y = std::min(5.0, 0.5 * r);
    for (C z : {C{r, 0}, C{r, y}, C{r, -y}, C{-r, y}}) grid.push_back(z);
  }
  for (C z : grid) {
    const auto e = sph_bessel(nu, z);
    const C w = e.j * e.h1_prime - e.j_prime * e.h1;
    o.require(std::abs(w - I / (z * z)) <= 1e-9 * std::abs(I / (z * z)), "Wronskian");
    // u_{nu-1} + u_{nu+1} = (2nu+1) u_nu / z
    const auto lo = sph_values<double>(nu - 1, z, e.regime);
    const auto hi = sph_values<double>(nu + 1, z, e.regime);
    const auto mid = sph_values<double>(nu, z, e.regime);
    for (auto pick : {&SphValuesT<double>::j, &SphValuesT<double>::h1, &SphValuesT<double>::h2}) {
      const C lhs = lo.*pick + hi.*pick;
      const C rhs = (2 * nu + 1) * (mid.*pick) / z;
      const double scale = std::abs(lo.*pick) + std::abs(hi.*pick);
      o.require(std::abs(lhs - rhs) <= 1e-9 * scale, "recursion");
    }
  }
  for (double theta : {0.0, 0.3, 0.7, -0.3, -0.7, std::numbers::pi - 0.3, std::numbers::pi}) {
    const C z = std::polar(40.0, theta);
    const auto s = sph_bessel(nu, z, RegimeChoice::Series);
    const auto a = sph_bessel(nu, z, RegimeChoice::Asymptotic);
    auto rel = [](C x, C y) { return std::abs(x - y) / std::abs(y); };
    o.require(rel(s.j, a.j) <= 1e-10 && rel(s.h1, a.h1) <= 1e-10 && rel(s.h2, a.h2) <= 1e-10,
              "series/asymptotic overlap at |z|=40");
  }
  return o;
}

constexpr sphere::Real nm = 1e-9L;
constexpr sphere::Real per_cm = 100.0L;

sphere::GainMedium diode() { return sphere::GainMedium::from_g0(3.4L, 1500 * nm, 0.02L, 0); }
sphere::GainMedium dye() { return sphere::GainMedium::from_g0(1.479L, 549 * nm, 0.062L, 0); }

Outcome diode_case() {
  using namespace sphere;
  Outcome o;
  const SphericalResonator res{150e-6L};
  o.require(std::abs(mode_wavelength_pert(679, diode(), res) / nm - 1499.870L) <= 1e-3L,
            "m=679 wavelength");
  o.require(std::abs(mode_gain_pert(679, diode(), res) / per_cm - 40.412L) <= 1e-2L,
            "m=679 gain");
  const auto modes = enumerate_modes(diode(), res, 1000 * per_cm);
  o.require(modes.size() == 66, "expected 66 modes, got " + std::to_string(modes.size()));
  if (modes.empty()) return o;
  const auto [lo, hi] = std::minmax_element(modes.begin(), modes.end(),
                                            [](auto& a, auto& b) { return a.m < b.m; });
  o.require(lo->m == 647 && hi->m == 712, "mode number range");
  o.require(std::abs(lo->lambda_pert / nm - 1573.930L) <= 1e-3L &&
                std::abs(hi->lambda_pert / nm - 1430.457L) <= 1e-3L,
            "endpoint wavelengths");
  return o;
}

Outcome dye_case() {
  using namespace sphere;
  Outcome o;
  o.require(std::abs(min_radius(dye(), 5 * per_cm) * 1e3L - 3.287825L) <= 1e-5L, "min_radius");
  const SphericalResonator res{3.3e-3L};
  const auto modes = enumerate_modes(dye(), res, 5 * per_cm);
  o.require(modes.size() == 67, "expected 67 modes, got " + std::to_string(modes.size()));
  if (modes.empty()) return o;
  const auto [lo, hi] = std::minmax_element(modes.begin(), modes.end(),
                                            [](auto& a, auto& b) { return a.m < b.m; });
  o.require(lo->m == 17746 && hi->m == 17812, "mode number range");
  Real gmin = modes.front().g0_pert, gmax = gmin;
  for (const auto& m : modes) {
    gmin = std::min(gmin, m.g0_pert);
    gmax = std::max(gmax, m.g0_pert);
  }
  o.require(std::abs(gmin / per_cm - 4.981546L) <= 1e-4L &&
                std::abs(gmax / per_cm - 4.999727L) <= 1e-4L,
            "g0 range");
  o.require(std::abs(lo->lambda_pert / nm - 550.028673L) <= 1e-3L &&
                std::abs(hi->lambda_pert / nm - 547.991700L) <= 1e-3L,
            "endpoint wavelengths");
  return o;
}

struct TableRow {
  int m;
  sphere::Real g0, lambda_pert, lambda_exact;
};

constexpr TableRow kTable[] = {
    {17779, 4.981546L, 549.00830142L, 549.00829751L}, {17780, 4.981554L, 548.97742540L, 548.97743614L},
    {17778, 4.981572L, 549.03918091L, 549.03916235L}, {17781, 4.981594L, 548.94655285L, 548.94657824L},
    {17777, 4.981630L, 549.07006387L, 549.07003065L}, {17782, 4.981668L, 548.91568378L, 548.91572380L},
    {17776, 4.981720L, 549.10095031L, 549.10090243L},
};

Outcome table_rows() {
  using namespace sphere;
  Outcome o;
  const SphericalResonator res{3.3e-3L};
  const auto modes = enumerate_modes(dye(), res, 5 * per_cm);
  for (std::size_t l = 0; l < std::size(kTable); ++l) {
    const auto& row = kTable[l];
    const std::string tag = "m=" + std::to_string(row.m) + ": ";
    o.require(l < modes.size() && modes[l].m == row.m, tag + "ordering by threshold gain");
    o.require(std::abs(mode_gain_pert(row.m, dye(), res) / per_cm - row.g0) <= 1e-5L, tag + "g0");
    o.require(std::abs(mode_wavelength_pert(row.m, dye(), res) / nm - row.lambda_pert) <= 1e-5L,
              tag + "lambda_pert");
    const auto s = solve_mode_exact(row.m, dye(), res);
    o.require(std::abs(s.lambda_exact / nm - row.lambda_exact) <= 1e-4L, tag + "lambda_exact");
    o.require(std::abs(s.g0 / per_cm - row.g0) <= 1e-5L, tag + "exact g0");
  }
  return o;
}

Outcome reflection_peak() {
  using namespace sphere;
  Outcome o;
  const SphericalResonator res{3.3e-3L};
  const auto sol = solve_mode_exact(17779, dye(), res);
  const auto medium = dye().with_g0(sol.g0);
  const Real k = 2 * std::numbers::pi_v<Real> / sol.lambda_exact;
  const Real R0 = reflection_amplitude(refractive_index(sol.lambda_exact, medium), k, res.a).R;
  o.require(R0 >= 1e12L, "R at the singularity below 1e12");

  const auto scan = scan_reflection(medium, res, 548.7L * nm, 549.3L * nm, 4001);
  Real second = 0;
  for (const auto& p : scan.peaks) {
    if (std::abs(p.lambda - sol.lambda_exact) > 1e-3L * nm) second = std::max(second, p.R);
  }
  o.require(second > 0, "no secondary peaks found");
  o.require(R0 >= 100 * second, "central peak not dominant");

  const auto flat = scan_reflection(dye(), res, 548.7L * nm, 549.3L * nm, 4001);
  for (const auto& s : flat.samples) o.require(std::abs(s.R - 1) <= 1e-9L, "|R-1| at kappa0=0");
  return o;
}

// Local minima of |M22| on a dense grid, compared with spectrum().
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rc = [&] { return cplx{u(rng), u(rng)}; };
  const int n = 501;
  int tested = 0;
  while (tested < 100 && o.ok) {
    const MatchingMatrix B{rc(), rc(), rc(), rc()};
    if (std::abs(B.b) < 0.2) continue;
    const auto s = point::spectrum(B);
    if (s.size() != 2 && !(s.size() == 1 && s[0].order == 2)) continue;
    double lo_re = 1e300, hi_re = -1e300, lo_im = 1e300, hi_im = -1e300;
    for (const auto& p : s) {
      lo_re = std::min(lo_re, p.k.real());
      hi_re = std::max(hi_re, p.k.real());
      lo_im = std::min(lo_im, p.k.imag());
      hi_im = std::max(hi_im, p.k.imag());
    }
    const double pad = 0.5 + 0.25 * std::max(hi_re - lo_re, hi_im - lo_im);
    const double x0 = lo_re - pad, y0 = lo_im - pad;
    const double h = std::max(hi_re - lo_re, hi_im - lo_im) + 2 * pad;
    const double step = h / (n - 1);
    bool near_origin = false;
    for (const auto& p : s) near_origin |= std::abs(p.k) < 10 * step;
    if (near_origin) continue;
    ++tested;

    std::vector<double> f(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx k{x0 + i * step, y0 + j * step};
        f[i * n + j] = std::abs(k) < 0.5 * step ? 1e300 : std::abs(point::m22(B, k));
      }
    std::vector<cplx> minima;
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) {
        const double v = f[i * n + j];
        bool strict = true;
        for (int di = -1; di <= 1 && strict; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            if ((di || dj) && f[(i + di) * n + j + dj] <= v) {
              strict = false;
              break;
            }
        if (!strict) continue;
        const cplx k{x0 + i * step, y0 + j * step};
        if (std::abs(k) < 10 * step) continue;  // the 1/k factor near the origin
        minima.push_back(k);
      }
    // Every root has a grid minimum next to it and every minimum a root.
    for (const auto& p : s) {
      bool hit = false;
      for (cplx m : minima) hit |= std::abs(m - p.k) <= 2 * step;
      o.require(hit, "root without a grid minimum");
    }
    for (cplx m : minima) {
      bool hit = false;
      for (const auto& p : s) hit |= std::abs(m - p.k) <= 2 * step;
      o.require(hit, "grid minimum without a root");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 delta interaction", delta_interaction},
      {"2 transfer-matrix property suite", property_suite},
      {"3 PT construction", pt_construction},
      {"4 coalescence scenarios", coalescence_scenarios},
      {"5 special functions", special_functions},
      {"6 diode case", diode_case},
      {"7 dye case", dye_case},
      {"8 dye threshold table", table_rows},
      {"9 reflection peak", reflection_peak},
      {"10 grid-scan oracle", oracle_equivalence},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s: %s%s%s\n", r.ok ? "PASS" : "FAIL", name, r.ok ? "" : " -- ",
                r.detail.c_str());
    failures += !r.ok;
  }
  return failures == 0 ? 0 : 1;
}
