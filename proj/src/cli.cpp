#include "specsing/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "specsing/coalescence.hpp"
#include "specsing/csv.hpp"
#include "specsing/errors.hpp"
#include "specsing/report.hpp"

#ifndef SPECSING_DEFAULT_PRESETS
#define SPECSING_DEFAULT_PRESETS ""
#endif

namespace specsing {

namespace {

using report::json;

struct OutputOpts {
  bool json = false;
  bool csv = false;
  std::string out;
};

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
  auto* j = cmd->add_flag("--json", o.json, "Emit JSON");
  auto* c = cmd->add_flag("--csv", o.csv, "Emit CSV");
  j->excludes(c);
  cmd->add_option("--out", o.out, "Write output to FILE instead of stdout");
}

struct TolOpts {
  Tolerances tol{};
};

void add_tolerance_flags(CLI::App* cmd, TolOpts& t) {
  cmd->add_option("--tol-class", t.tol.class_rel, "Real-axis / zero classification tolerance");
  cmd->add_option("--tol-det", t.tol.det, "Anomaly (|det B - 1|) tolerance");
  cmd->add_option("--tol-disc", t.tol.disc_rel, "Double-root tolerance");
  cmd->add_option("--tol-sym", t.tol.sym_rel, "Symmetry residual tolerance");
  cmd->add_option("--tol-angle", t.tol.angle, "Angular congruence tolerance");
  cmd->add_option("--tol-case", t.tol.case_rel, "Case selection (b = 0, tr B = 0) tolerance");
}

struct MediumOpts {
  std::string presets_file;
  std::string preset;
  std::optional<double> n0, lambda0_nm, gamma_hat, g0_max_cm1;
};

void add_medium_flags(CLI::App* cmd, MediumOpts& m) {
  cmd->add_option("--presets", m.presets_file, "Presets file (JSON); default $SPECSING_PRESETS");
  cmd->add_option("--preset", m.preset, "Medium preset name");
  cmd->add_option("--n0", m.n0, "Background refractive index");
  cmd->add_option("--lambda0", m.lambda0_nm, "Resonance wavelength (nm)");
  cmd->add_option("--gamma-hat", m.gamma_hat, "Normalized damping");
  cmd->add_option("--g0-max", m.g0_max_cm1, "Largest available gain (1/cm)");
}

std::vector<report::Preset> available_presets(const std::string& flag) {
  if (!flag.empty()) return report::load_presets(flag);
  if (const char* env = std::getenv("SPECSING_PRESETS"); env != nullptr && *env != '\0') {
    return report::load_presets(env);
  }
  const std::string compiled = SPECSING_DEFAULT_PRESETS;
  std::error_code ec;
  if (!compiled.empty() && std::filesystem::exists(compiled, ec)) {
    return report::load_presets(compiled);
  }
  return report::builtin_presets();
}

struct ResolvedMedium {
  sphere::GainMedium medium;
  std::optional<double> g0_max_cm1;
};

ResolvedMedium resolve_medium(const MediumOpts& m) {
  ResolvedMedium r;
  std::optional<double> n0 = m.n0, l0 = m.lambda0_nm, gh = m.gamma_hat;
  r.g0_max_cm1 = m.g0_max_cm1;
  if (!m.preset.empty()) {
    const auto presets = available_presets(m.presets_file);
    const auto& p = report::find_preset(presets, m.preset);
    if (!n0) n0 = p.n0;
    if (!l0) l0 = p.lambda0_nm;
    if (!gh) gh = p.gamma_hat;
    if (!r.g0_max_cm1) r.g0_max_cm1 = p.g0_max_cm1;
  }
  if (!n0 || !l0 || !gh) {
    throw ParseError("medium needs --preset or all of --n0, --lambda0, --gamma-hat");
  }
  r.medium = {*n0, *l0 * 1e-9L, *gh, 0};
  r.medium.validate();
  return r;
}

double require_g0_max(const ResolvedMedium& r) {
  if (!r.g0_max_cm1) throw ParseError("--g0-max is required when the preset does not supply it");
  return *r.g0_max_cm1;
}

void emit(const OutputOpts& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json sample_json(const sphere::ScanSample& s) {
  return json{{"lambda_nm", double(s.lambda * 1e9L)}, {"R", double(s.R)}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral singularities of point interactions and spherical gain media",
               std::string(report::kToolName)};
  app.set_version_flag("--version", std::string(report::kToolVersion));
  app.require_subcommand(1);

  auto* point_cmd = app.add_subcommand("point", "Complex point interactions");
  point_cmd->require_subcommand(1);

  OutputOpts analyze_out;
  TolOpts analyze_tol;
  std::string matrix_spec;
  auto* analyze = point_cmd->add_subcommand("analyze", "Case, symmetries and spectrum of B");
  analyze->add_option("matrix", matrix_spec, "a=..,b=..,c=..,d=..")->required();
  add_output_flags(analyze, analyze_out);
  add_tolerance_flags(analyze, analyze_tol);

  OutputOpts sweep_out;
  TolOpts sweep_tol;
  std::string mu_text;
  double eps_min = -1.0, eps_max = 1.0;
  int steps = 201;
  auto* sweep = point_cmd->add_subcommand("sweep", "k(eps) along nu = (1 + eps/4) mu^2");
  sweep->add_option("--mu", mu_text, "Complex mu, e.g. -1+4i")->required();
  sweep->add_option("--eps-min", eps_min, "Lower end of the eps grid");
  sweep->add_option("--eps-max", eps_max, "Upper end of the eps grid");
  sweep->add_option("--steps", steps, "Grid points (>= 2)");
  add_output_flags(sweep, sweep_out);
  add_tolerance_flags(sweep, sweep_tol);

  auto* sphere_cmd = app.add_subcommand("sphere", "Spherical gain-medium resonator");
  sphere_cmd->require_subcommand(1);

  MediumOpts modes_medium;
  OutputOpts modes_out;
  std::string modes_radius;
  bool modes_exact = false;
  auto* modes = sphere_cmd->add_subcommand("modes", "Modes reachable with g0 <= g0_max");
  add_medium_flags(modes, modes_medium);
  modes->add_option("--radius", modes_radius, "Radius, e.g. 3.3mm or 150um")->required();
  modes->add_flag("--exact", modes_exact, "Refine every mode with the exact solver");
  add_output_flags(modes, modes_out);

  MediumOpts scan_medium;
  OutputOpts scan_out;
  std::string scan_radius;
  double scan_g0 = 0.0, lambda_min = 0.0, lambda_max = 0.0;
  int scan_points = 4001;
  bool peaks_only = false;
  auto* scan = sphere_cmd->add_subcommand("scan", "Reflection coefficient R(lambda) at fixed g0");
  add_medium_flags(scan, scan_medium);
  scan->add_option("--radius", scan_radius, "Radius")->required();
  scan->add_option("--g0", scan_g0, "Gain coefficient (1/cm)")->required();
  scan->add_option("--lambda-min", lambda_min, "Scan start (nm)")->required();
  scan->add_option("--lambda-max", lambda_max, "Scan end (nm)")->required();
  scan->add_option("--points", scan_points, "Grid points (>= 2)");
  scan->add_flag("--peaks", peaks_only, "Emit refined peaks instead of the samples");
  add_output_flags(scan, scan_out);

  MediumOpts minr_medium;
  OutputOpts minr_out;
  auto* minr = sphere_cmd->add_subcommand("minradius", "Smallest radius reaching threshold");
  add_medium_flags(minr, minr_medium);
  add_output_flags(minr, minr_out);

  OutputOpts bessel_out;
  double nu = static_cast<double>(sphere::kNuTransverse);
  std::string z_text;
  std::string regime_text = "auto";
  auto* bessel = app.add_subcommand("bessel", "Spherical Bessel/Hankel values and derivatives");
  bessel->add_option("--nu", nu, "Order (default sqrt(5)/2)");
  bessel->add_option("--z", z_text, "Complex argument")->required();
  bessel->add_option("--regime", regime_text, "auto, series or asymptotic")
      ->check(CLI::IsMember({"auto", "series", "asymptotic"}));
  add_output_flags(bessel, bessel_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) {
      const auto r = report::analyze_point(matrix_spec, analyze_tol.tol);
      std::ostringstream os;
      if (analyze_out.csv) {
        report::write_spectrum_csv(os, r.spectrum);
      } else {
        os << dump(report::to_json(r));
      }
      emit(analyze_out, os.str(), out);
    } else if (sweep->parsed()) {
      const cplx mu = report::parse_complex(mu_text);
      const auto grid = coalescence::epsilon_grid(eps_min, eps_max, steps);
      const auto result = coalescence::sweep(mu, grid, sweep_tol.tol);
      std::ostringstream os;
      if (sweep_out.json) {
        json rows = json::array();
        for (const auto& row : result.rows) {
          rows.push_back(json{{"eps", row.eps},
                              {"k_plus", json{{"re", row.plus.k.real()}, {"im", row.plus.k.imag()}}},
                              {"kind_plus", point::to_string(row.plus.kind)},
                              {"k_minus", json{{"re", row.minus.k.real()}, {"im", row.minus.k.imag()}}},
                              {"kind_minus", point::to_string(row.minus.kind)}});
        }
        json critical = json::array();
        for (const auto& c : coalescence::critical_epsilons(mu)) {
          critical.push_back(json{{"eps", c.eps}, {"event", coalescence::to_string(c.event)}});
        }
        os << dump(json{{"mu", json{{"re", mu.real()}, {"im", mu.imag()}}},
                        {"critical", critical},
                        {"rows", rows}});
      } else {
        coalescence::write_csv(os, result);
      }
      emit(sweep_out, os.str(), out);
    } else if (modes->parsed()) {
      const auto med = resolve_medium(modes_medium);
      const sphere::SphericalResonator res{report::parse_radius(modes_radius)};
      const auto list =
          sphere::enumerate_modes(med.medium, res, require_g0_max(med) * 100.0L, modes_exact);
      std::ostringstream os;
      if (modes_out.json) {
        json arr = json::array();
        for (const auto& s : list) arr.push_back(report::to_json(s));
        os << dump(arr);
      } else {
        report::write_modes_csv(os, list);
      }
      emit(modes_out, os.str(), out);
    } else if (scan->parsed()) {
      const auto med = resolve_medium(scan_medium);
      const sphere::SphericalResonator res{report::parse_radius(scan_radius)};
      const auto result = sphere::scan_reflection(med.medium.with_g0(scan_g0 * 100.0L), res,
                                                  lambda_min * 1e-9L, lambda_max * 1e-9L,
                                                  scan_points);
      std::ostringstream os;
      if (scan_out.json) {
        json samples = json::array(), peaks = json::array();
        if (!peaks_only) {
          for (const auto& s : result.samples) samples.push_back(sample_json(s));
        }
        for (const auto& p : result.peaks) peaks.push_back(sample_json(p));
        json doc{{"g0_cm1", scan_g0}, {"peaks", peaks}};
        if (!peaks_only) doc["samples"] = samples;
        os << dump(doc);
      } else {
        report::write_scan_csv(os, peaks_only ? result.peaks : result.samples);
      }
      emit(scan_out, os.str(), out);
    } else if (minr->parsed()) {
      const auto med = resolve_medium(minr_medium);
      const double g0_max = require_g0_max(med);
      const double a_min = static_cast<double>(sphere::min_radius(med.medium, g0_max * 100.0L));
      std::ostringstream os;
      if (minr_out.csv) {
        os << "g0_max_cm1,a_min_mm\n" << format_g12(g0_max) << ',' << format_g12(a_min * 1e3) << '\n';
      } else {
        os << dump(json{{"g0_max_cm1", g0_max}, {"a_min_m", a_min}, {"a_min_mm", a_min * 1e3}});
      }
      emit(minr_out, os.str(), out);
    } else if (bessel->parsed()) {
      const cplx z = report::parse_complex(z_text);
      const auto choice = regime_text == "series"       ? specfun::RegimeChoice::Series
                          : regime_text == "asymptotic" ? specfun::RegimeChoice::Asymptotic
                                                        : specfun::RegimeChoice::Auto;
      const auto e = specfun::sph_bessel(nu, z, choice);
      emit(bessel_out, dump(report::to_json(e)), out);
    }
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const SeedOutOfRegime& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace specsing
