#pragma once

// Input parsing and serialization shared by the command-line front end.

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsing/gain_sphere.hpp"
#include "specsing/point_core.hpp"
#include "specsing/specfun.hpp"
#include "specsing/symmetries.hpp"

namespace specsing::report {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "specsing";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// "3", "2i", "-1+4i", "i", "-i", "1.5e-3-2e2i". Throws ParseError.
cplx parse_complex(std::string_view text);

/// "a=..,b=..,c=..,d=.." with each key exactly once. Throws ParseError.
point::MatchingMatrix parse_matrix(std::string_view text);

/// Radius in meters; accepts m, cm, mm, um, μm and nm suffixes. A bare
/// number is meters.
double parse_radius(std::string_view text);

/// Number with no trailing garbage; throws ParseError.
double parse_real(std::string_view text);

struct Preset {
  std::string name;
  double n0;
  double lambda0_nm;
  double gamma_hat;
  double g0_max_cm1;

  /// Medium with kappa0 = 0.
  sphere::GainMedium medium() const;
};

std::vector<Preset> builtin_presets();
std::vector<Preset> parse_presets(const json& doc);
std::vector<Preset> load_presets(const std::string& path);
/// Throws ParseError for unknown names.
const Preset& find_preset(const std::vector<Preset>& presets, std::string_view name);

struct AnalysisReport {
  std::string input;
  point::MatchingMatrix matrix;
  point::PointCase case_label = point::PointCase::I;
  cplx det;
  bool anomalous = false;
  bool singular = false;
  sym::SymmetryReport symmetry{};
  std::vector<point::SpectralPoint> spectrum;
  std::string version{kToolVersion};
  Tolerances tolerances{};
};

AnalysisReport analyze_point(std::string_view matrix_spec,
                             const Tolerances& tol = kDefaultTolerances);

json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const json& j);

json to_json(const specfun::BesselEval& e);
json to_json(const sphere::ModeSolution& s);

/// k_re,k_im,kind,order
void write_spectrum_csv(std::ostream& os, const std::vector<point::SpectralPoint>& points);
/// m,lambda_pert_nm,g0_pert_cm1,lambda_exact_nm,g0_cm1,x,eta,kappa,residual_rel,exact
void write_modes_csv(std::ostream& os, const std::vector<sphere::ModeSolution>& modes);
/// lambda_nm,R
void write_scan_csv(std::ostream& os, const std::vector<sphere::ScanSample>& samples);

}  // namespace specsing::report
