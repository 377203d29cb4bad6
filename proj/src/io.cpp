#include "toeplitz_chains/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace toeplitz_chains {
namespace {

using nlohmann::json;

cplx parse_complex_pair(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2) throw UsageError(std::string(what) + " must be [re, im]");
  return cplx(v[0].get<double>(), v[1].get<double>());
}

json complex_pair(cplx v) { return json::array({v.real(), v.imag()}); }

json poly2_to_json(const Poly2& p) {
  const auto& c = p.coeffs();
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) coeffs.push_back(complex_pair(c(i, j)));
  return json{{"z_degree", c.rows() - 1}, {"lambda_degree", c.cols() - 1}, {"coeffs", coeffs}};
}

Poly2 poly2_from_json(const json& doc) {
  const Eigen::Index rows = doc.at("z_degree").get<Eigen::Index>() + 1;
  const Eigen::Index cols = doc.at("lambda_degree").get<Eigen::Index>() + 1;
  Eigen::MatrixXcd c(rows, cols);
  const json& coeffs = doc.at("coeffs");
  if (static_cast<Eigen::Index>(coeffs.size()) != rows * cols)
    throw UsageError("fixture coefficient table has the wrong size");
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      c(i, j) = parse_complex_pair(coeffs[static_cast<std::size_t>(k++)], "coeff");
  return Poly2(c);
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ModelSpec parse_model(const json& doc) {
  ModelSpec m;
  const std::string cls = doc.value("class", "BDI");
  if (cls == "BDI") {
    m.cls = SymmetryClass::BDI;
  } else if (cls == "AIII") {
    m.cls = SymmetryClass::AIII;
  } else {
    throw UsageError("class must be BDI or AIII");
  }

  if (doc.contains("sigma") && doc.contains("theta"))
    throw BadPhase("give either sigma or theta, not both");
  if (doc.contains("theta")) {
    if (m.cls == SymmetryClass::BDI) throw BadPhase("BDI takes sigma = +-1, not theta");
    const double theta = doc.at("theta").get<double>();
    m.sigma_phase = std::polar(1.0, theta);
  } else if (doc.contains("sigma")) {
    const double sigma = doc.at("sigma").get<double>();
    if (std::abs(std::abs(sigma) - 1.0) > 1e-12) throw BadPhase("sigma must be +1 or -1");
    m.sigma_phase = cplx(sigma, 0.0);
  }
  m.n_P = doc.value("n_P", 0);
  m.multiplicity = doc.value("multiplicity", 2);

  if (doc.contains("couplings")) {
    if (doc.contains("zeros_inside") || doc.contains("zeros_outside"))
      throw UsageError("give either couplings or zeros, not both");
    CouplingList c;
    for (const json& row : doc.at("couplings")) {
      if (!row.is_array() || row.size() != 3)
        throw UsageError("couplings rows must be [alpha, re, im]");
      c.couplings[row[0].get<int>()] = cplx(row[1].get<double>(), row[2].get<double>());
    }
    return from_coefficients(c, m.cls);
  }

  if (doc.contains("zeros_inside"))
    for (const json& v : doc.at("zeros_inside")) m.zeros_inside.push_back(parse_complex_pair(v, "zero"));
  if (doc.contains("zeros_outside"))
    for (const json& v : doc.at("zeros_outside")) m.zeros_outside.push_back(parse_complex_pair(v, "zero"));
  return validate_model(m);
}

ModelSpec parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("model document is not valid JSON: ") + e.what());
  }
  return parse_model(doc);
}

json model_to_json(const ModelSpec& m) {
  json doc;
  doc["class"] = m.is_bdi() ? "BDI" : "AIII";
  if (m.is_bdi())
    doc["sigma"] = m.sigma();
  else
    doc["theta"] = std::arg(m.sigma_phase);
  doc["n_P"] = m.n_P;
  doc["multiplicity"] = m.multiplicity;
  json zi = json::array(), zo = json::array();
  for (const cplx& z : m.zeros_inside) zi.push_back(complex_pair(z));
  for (const cplx& Z : m.zeros_outside) zo.push_back(complex_pair(Z));
  doc["zeros_inside"] = zi;
  doc["zeros_outside"] = zo;
  return doc;
}

std::string model_digest(const ModelSpec& m) {
  // Canonical text: sorted zeros at 17 digits, then FNV-1a 64.
  std::ostringstream os;
  os << (m.is_bdi() ? "BDI" : "AIII") << '|' << fmt17(m.sigma_phase.real()) << ','
     << fmt17(m.sigma_phase.imag()) << '|' << m.n_P << '|' << m.multiplicity;
  for (const cplx& z : m.zeros_inside) os << "|i" << fmt17(z.real()) << ',' << fmt17(z.imag());
  for (const cplx& Z : m.zeros_outside) os << "|o" << fmt17(Z.real()) << ',' << fmt17(Z.imag());
  const std::string s = os.str();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

json series_to_json(const CorrelatorSeries& series) {
  json terms = json::array();
  for (const SubsetTerm& t : series.terms) {
    terms.push_back(json{{"M", t.M},
                         {"r_re", t.r.real()},
                         {"r_im", t.r.imag()},
                         {"C_re", t.C.real()},
                         {"C_im", t.C.imag()}});
  }
  return json{{"alpha", series.alpha},
              {"N_alpha", series.N_alpha},
              {"osc", series.osc_parity},
              {"sigma_negative", series.sigma_negative},
              {"terms", terms}};
}

json determinant_to_json(const DeterminantResult& det) {
  return json{{"value_re", det.value.real()},
              {"value_im", det.value.imag()},
              {"log_abs", det.log_abs},
              {"phase", std::arg(det.phase)},
              {"n_terms", det.terms ? det.terms->size() : 0}};
}

json transfer_to_json(const TransferReport& rep) {
  json spectrum = json::array();
  for (const auto& [mask, mu] : rep.spectrum)
    spectrum.push_back(json{{"subset_mask", mask}, {"mu_re", mu.real()}, {"mu_im", mu.imag()}});
  return json{{"spectrum", spectrum},
              {"zero_eigenvalues", rep.zero_eigenvalues},
              {"chi_lower", rep.chi_lower},
              {"chi_upper", rep.chi_upper},
              {"theta", rep.theta},
              {"injective", rep.injective}};
}

json spectral_to_json(const SpectralReport& rep) {
  return json{{"N", rep.N},
              {"class", rep.aiii ? "AIII" : "BDI"},
              {"nu", rep.nu},
              {"d", rep.d},
              {"S_vonNeumann", rep.entropies.at(1.0)},
              {"S_2", rep.entropies.at(2.0)}};
}

std::string fourier_slice_csv(const FourierSlice& slice) {
  std::ostringstream os;
  os << "n,re,im,method\n";
  const char* method = slice.method == FourierMethod::residue ? "residue" : "fft";
  for (std::size_t i = 0; i < slice.values.size(); ++i) {
    const int n = slice.offset + static_cast<int>(i);
    os << n << ',' << fmt17(slice.values[i].real()) << ',' << fmt17(slice.values[i].imag()) << ','
       << method << '\n';
  }
  return os.str();
}

std::string spectral_reports_csv(const std::vector<SpectralReport>& reports) {
  std::size_t k = 0;
  for (const SpectralReport& r : reports) k = std::max(k, r.nontrivial().size());
  std::ostringstream os;
  os << "N";
  for (std::size_t i = 1; i <= k; ++i) os << ",nu_" << i;
  os << ",d,S_vonNeumann,S_2\n";
  for (const SpectralReport& r : reports) {
    os << r.N;
    const std::vector<double> nt = r.nontrivial();
    for (std::size_t i = 0; i < k; ++i) os << ',' << fmt17(i < nt.size() ? nt[i] : 1.0);
    os << ',' << r.d << ',' << fmt17(r.entropies.at(1.0)) << ',' << fmt17(r.entropies.at(2.0))
       << '\n';
  }
  return os.str();
}

json fixture_to_json(const SmithFixture& fix) {
  json doc;
  doc["family"] = fixture_family_name(fix.family);
  doc["a"] = complex_pair(fix.param_a);
  doc["b"] = complex_pair(fix.param_b);
  json tau = json::array();
  for (const cplx& t : fix.tau) tau.push_back(complex_pair(t));
  doc["tau"] = tau;
  json g = json::array(), h = json::array();
  for (const cplx& c : fix.g_tilde) g.push_back(complex_pair(c));
  for (const cplx& c : fix.h_tilde) h.push_back(complex_pair(c));
  doc["g_tilde"] = g;
  doc["h_tilde"] = h;
  doc["y21"] = poly2_to_json(fix.y21);
  doc["y22"] = poly2_to_json(fix.y22);
  return doc;
}

SmithFixture fixture_from_json(const json& doc) {
  const std::string name = doc.at("family").get<std::string>();
  FixtureFamily family;
  if (name == "b_quartic_inside") {
    family = FixtureFamily::b_quartic_inside;
  } else if (name == "ab_sextic") {
    family = FixtureFamily::ab_sextic;
  } else if (name == "aiii_b_quartic") {
    family = FixtureFamily::aiii_b_quartic;
  } else {
    throw UsageError("unknown fixture family: " + name);
  }
  const cplx a = parse_complex_pair(doc.at("a"), "a");
  const cplx b = parse_complex_pair(doc.at("b"), "b");
  SmithFixture fix = make_fixture(family, a, b);

  // The shipped tables override the programmatic ones (they are the fixture).
  fix.y21 = poly2_from_json(doc.at("y21"));
  fix.y22 = poly2_from_json(doc.at("y22"));
  fix.tau.clear();
  for (const json& v : doc.at("tau")) fix.tau.push_back(parse_complex_pair(v, "tau"));
  fix.g_tilde.clear();
  for (const json& v : doc.at("g_tilde")) fix.g_tilde.push_back(parse_complex_pair(v, "g"));
  fix.h_tilde.clear();
  for (const json& v : doc.at("h_tilde")) fix.h_tilde.push_back(parse_complex_pair(v, "h"));
  return fix;
}

}  // namespace toeplitz_chains
