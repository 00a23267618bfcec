#include "specsing/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "specsing/csv.hpp"
#include "specsing/errors.hpp"

namespace specsing::report {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw ParseError(std::string(what) + ": '" + std::string(text) + "'");
}

double number_or_throw(std::string_view text, std::string_view whole) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body.empty() || body.front() == '+') bad("malformed number", whole);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(value)) {
    bad("malformed number", whole);
  }
  return value;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

json check_json(bool holds, double residual) {
  return json{{"holds", holds}, {"residual", residual}};
}

}  // namespace

double parse_real(std::string_view text) {
  return number_or_throw(trim(text), text);
}

cplx parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad("empty complex literal", text);
  if (s.back() != 'i') return {number_or_throw(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // Split before the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);

  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    im = number_or_throw(im_text, text);
  }
  const double re = re_text.empty() ? 0.0 : number_or_throw(re_text, text);
  return {re, im};
}

point::MatchingMatrix parse_matrix(std::string_view text) {
  std::array<std::optional<cplx>, 4> entries;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad("expected key=value in matrix spec", text);
    const std::string_view key = trim(item.substr(0, eq));
    if (key.size() != 1 || key[0] < 'a' || key[0] > 'd') bad("unknown matrix entry", key);
    auto& slot = entries[static_cast<std::size_t>(key[0] - 'a')];
    if (slot) bad("duplicate matrix entry", key);
    slot = parse_complex(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  for (const auto& e : entries) {
    if (!e) bad("matrix spec needs all of a, b, c, d", text);
  }
  return {*entries[0], *entries[1], *entries[2], *entries[3]};
}

double parse_radius(std::string_view text) {
  const std::string_view s = trim(text);
  struct Unit {
    std::string_view suffix;
    double scale;
  };
  static constexpr std::array<Unit, 6> units{{
      {"\xce\xbcm", 1e-6}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"nm", 1e-9}, {"m", 1.0}}};
  double scale = 1.0;
  std::string_view number = s;
  for (const auto& u : units) {
    if (s.size() > u.suffix.size() && s.ends_with(u.suffix)) {
      scale = u.scale;
      number = trim(s.substr(0, s.size() - u.suffix.size()));
      break;
    }
  }
  const double value = number_or_throw(number, text) * scale;
  if (!(value > 0.0)) bad("radius must be positive", text);
  return value;
}

sphere::GainMedium Preset::medium() const {
  return {n0, lambda0_nm * 1e-9L, gamma_hat, 0};
}

std::vector<Preset> builtin_presets() {
  return {
      {"diode", 3.4, 1500.0, 0.02, 1000.0},
      {"rose_bengal_dmso", 1.479, 549.0, 0.062, 5.0},
  };
}

std::vector<Preset> parse_presets(const json& doc) {
  const json& list = doc.is_object() && doc.contains("presets") ? doc.at("presets") : doc;
  if (!list.is_array()) throw ParseError("presets file must hold an array of presets");
  std::vector<Preset> out;
  try {
    for (const auto& p : list) {
      out.push_back({p.at("name").get<std::string>(), p.at("n0").get<double>(),
                     p.at("lambda0_nm").get<double>(), p.at("gamma_hat").get<double>(),
                     p.at("g0_max_cm1").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad preset entry: ") + e.what());
  }
  return out;
}

std::vector<Preset> load_presets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presets file '" + path + "'");
  try {
    return parse_presets(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError("presets file '" + path + "': " + e.what());
  }
}

const Preset& find_preset(const std::vector<Preset>& presets, std::string_view name) {
  const auto it = std::find_if(presets.begin(), presets.end(),
                               [&](const Preset& p) { return p.name == name; });
  if (it == presets.end()) throw ParseError("unknown preset '" + std::string(name) + "'");
  return *it;
}

AnalysisReport analyze_point(std::string_view matrix_spec, const Tolerances& tol) {
  AnalysisReport r;
  r.input = std::string(trim(matrix_spec));
  r.matrix = parse_matrix(matrix_spec);
  r.case_label = point::classify_case(r.matrix, tol);
  const auto anomaly = point::classify_anomalous(r.matrix, tol);
  r.det = anomaly.det;
  r.anomalous = anomaly.anomalous;
  r.singular = anomaly.singular;
  r.symmetry = sym::symmetry_report(r.matrix, tol);
  r.spectrum = point::spectrum(r.matrix, tol);
  r.tolerances = tol;
  return r;
}

json to_json(const AnalysisReport& r) {
  json spectrum = json::array();
  for (const auto& p : r.spectrum) {
    spectrum.push_back(
        json{{"k", complex_json(p.k)}, {"kind", point::to_string(p.kind)}, {"order", p.order}});
  }
  const auto& t = r.tolerances;
  return json{
      {"tool", json{{"name", kToolName}, {"version", r.version}}},
      {"input", json{{"spec", r.input},
                     {"matrix", json{{"a", complex_json(r.matrix.a)},
                                     {"b", complex_json(r.matrix.b)},
                                     {"c", complex_json(r.matrix.c)},
                                     {"d", complex_json(r.matrix.d)}}}}},
      {"case", point::to_string(r.case_label)},
      {"det", complex_json(r.det)},
      {"anomalous", r.anomalous},
      {"singular", r.singular},
      {"symmetry", json{{"P", check_json(r.symmetry.p_symmetric, r.symmetry.p_residual)},
                        {"T", check_json(r.symmetry.t_symmetric, r.symmetry.t_residual)},
                        {"PT", check_json(r.symmetry.pt_symmetric, r.symmetry.pt_residual)}}},
      {"spectrum", spectrum},
      {"tolerances", json{{"class_rel", t.class_rel},
                          {"det", t.det},
                          {"disc_rel", t.disc_rel},
                          {"sym_rel", t.sym_rel},
                          {"angle", t.angle},
                          {"case_rel", t.case_rel}}},
  };
}

AnalysisReport report_from_json(const json& j) {
  try {
    AnalysisReport r;
    r.version = j.at("tool").at("version").get<std::string>();
    const auto& in = j.at("input");
    r.input = in.at("spec").get<std::string>();
    const auto& m = in.at("matrix");
    r.matrix = {complex_from_json(m.at("a")), complex_from_json(m.at("b")),
                complex_from_json(m.at("c")), complex_from_json(m.at("d"))};
    r.case_label = point::point_case_from_string(j.at("case").get<std::string>());
    r.det = complex_from_json(j.at("det"));
    r.anomalous = j.at("anomalous").get<bool>();
    r.singular = j.at("singular").get<bool>();
    const auto& s = j.at("symmetry");
    r.symmetry = {s.at("P").at("holds").get<bool>(),      s.at("T").at("holds").get<bool>(),
                  s.at("PT").at("holds").get<bool>(),     s.at("P").at("residual").get<double>(),
                  s.at("T").at("residual").get<double>(), s.at("PT").at("residual").get<double>()};
    for (const auto& p : j.at("spectrum")) {
      r.spectrum.push_back({complex_from_json(p.at("k")),
                            point::spectral_kind_from_string(p.at("kind").get<std::string>()),
                            p.at("order").get<int>()});
    }
    const auto& t = j.at("tolerances");
    r.tolerances = {t.at("class_rel").get<double>(), t.at("det").get<double>(),
                    t.at("disc_rel").get<double>(),  t.at("sym_rel").get<double>(),
                    t.at("angle").get<double>(),     t.at("case_rel").get<double>()};
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed analysis report: ") + e.what());
  }
}

json to_json(const specfun::BesselEval& e) {
  return json{
      {"nu", e.nu},
      {"z", complex_json(e.z)},
      {"regime", specfun::to_string(e.regime)},
      {"j", complex_json(e.j)},
      {"j_prime", complex_json(e.j_prime)},
      {"h1", complex_json(e.h1)},
      {"h1_prime", complex_json(e.h1_prime)},
      {"h2", complex_json(e.h2)},
      {"h2_prime", complex_json(e.h2_prime)},
  };
}

json to_json(const sphere::ModeSolution& s) {
  return json{
      {"m", s.m},
      {"lambda_pert_nm", double(s.lambda_pert * 1e9L)},
      {"g0_pert_cm1", double(s.g0_pert / 100)},
      {"lambda_exact_nm", double(s.lambda_exact * 1e9L)},
      {"g0_cm1", double(s.g0 / 100)},
      {"x", double(s.x)},
      {"eta", double(s.eta)},
      {"kappa", double(s.kappa)},
      {"residual_rel", double(s.residual_rel)},
      {"exact", s.exact},
  };
}

void write_spectrum_csv(std::ostream& os, const std::vector<point::SpectralPoint>& points) {
  os << "k_re,k_im,kind,order\n";
  for (const auto& p : points) {
    os << format_g12(p.k.real()) << ',' << format_g12(p.k.imag()) << ',' << point::to_string(p.kind)
       << ',' << p.order << '\n';
  }
}

void write_modes_csv(std::ostream& os, const std::vector<sphere::ModeSolution>& modes) {
  os << "m,lambda_pert_nm,g0_pert_cm1,lambda_exact_nm,g0_cm1,x,eta,kappa,residual_rel,exact\n";
  for (const auto& s : modes) {
    os << s.m << ',' << format_g12(double(s.lambda_pert * 1e9L)) << ','
       << format_g12(double(s.g0_pert / 100)) << ',' << format_g12(double(s.lambda_exact * 1e9L))
       << ',' << format_g12(double(s.g0 / 100)) << ',' << format_g12(double(s.x)) << ','
       << format_g12(double(s.eta)) << ',' << format_g12(double(s.kappa)) << ','
       << format_g12(double(s.residual_rel)) << ',' << (s.exact ? "true" : "false") << '\n';
  }
}

void write_scan_csv(std::ostream& os, const std::vector<sphere::ScanSample>& samples) {
  os << "lambda_nm,R\n";
  for (const auto& s : samples) {
    os << format_g12(double(s.lambda * 1e9L)) << ',' << format_g12(double(s.R)) << '\n';
  }
}

}  // namespace specsing::report
