#include "toeplitz_chains/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toeplitz_chains/approximation.hpp"
#include "toeplitz_chains/io.hpp"

namespace toeplitz_chains {
namespace {

using nlohmann::json;

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& text, const char* what) {
  Range r;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots));
      r.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " range: " + text);
  }
  if (r.hi < r.lo) throw UsageError(std::string(what) + " range is empty");
  return r;
}

cplx parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return cplx(std::stod(text), 0.0);
    return cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw UsageError("cannot parse --lambda value: " + text);
  }
}

struct Output {
  std::string path;  // empty = stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open output file: " + path);
    os << text;
  }
};

ModelSpec load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open model file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_model_text(ss.str());
}

json envelope(const std::string& command, const ModelSpec& m, json payload,
              const std::vector<std::string>& warnings) {
  return json{{"schema", "toeplitz-chains/1"},
              {"command", command},
              {"model_digest", model_digest(m)},
              {"payload", std::move(payload)},
              {"warnings", warnings}};
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact correlations and entanglement data for topological free-fermion chains"};
  app.require_subcommand(1);

  std::string model_path, out_path, format = "json", n_range, alpha_range = "", m_range,
                                     lambda_text = "0", csv_path;
  bool strict = false;
  double perturb = 1e-6;

  auto add_common = [&](CLI::App* cmd, bool needs_model = true) {
    if (needs_model) cmd->add_option("model", model_path, "model-spec JSON document")->required();
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--csv", csv_path, "shorthand for --format csv --out PATH");
    cmd->add_flag("--strict", strict, "error on non-generic input; exit 3 on warnings");
    cmd->add_option("--perturb", perturb, "relative epsilon for non-generic perturbation");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "winding number, genericity, lengths, bounds");
  add_common(analyze);

  CLI::App* strcorr = app.add_subcommand("string-corr", "string correlators over an (alpha, N) grid");
  add_common(strcorr);
  strcorr->add_option("--alpha", alpha_range, "alpha or a..b")->required();
  strcorr->add_option("--N", n_range, "N or a..b")->required();

  CLI::App* corrmat = app.add_subcommand("corr-matrix", "entanglement spectra and entropies");
  add_common(corrmat);
  corrmat->add_option("--N", n_range, "N or a..b")->required();
  bool with_lambda = false;
  corrmat->add_flag("--charpoly", with_lambda, "emit det(i lambda - A_N) at --lambda instead");
  corrmat->add_option("--lambda", lambda_text, "lambda as re or re,im");

  CLI::App* efp = app.add_subcommand("efp", "emptiness formation probability");
  add_common(efp);
  efp->add_option("--N", n_range, "N or a..b")->required();

  CLI::App* transfer = app.add_subcommand("transfer", "transfer-matrix spectrum and bounds");
  add_common(transfer);

  CLI::App* approx = app.add_subcommand("approximate", "order-parameter convergence of the even-multiplicity approximants");
  add_common(approx);
  approx->add_option("--m", m_range, "order or a..b")->required();

  CLI::App* verify = app.add_subcommand("verify", "closed form vs numeric oracle pass/fail matrix");
  add_common(verify);
  verify->add_option("--alpha", alpha_range, "alpha or a..b")->required();
  verify->add_option("--N", n_range, "N or a..b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<std::string> warnings;
  try {
    if (!csv_path.empty()) {
      format = "csv";
      out_path = csv_path;
    }
    Output out{out_path};
    const ModelSpec m = load_model(model_path);
    StringOptions sopt;
    sopt.strict = strict;
    sopt.perturb_eps = perturb;

    if (*analyze) {
      json payload;
      payload["omega"] = winding_number(m);
      payload["class"] = m.is_bdi() ? "BDI" : "AIII";
      payload["multiplicity"] = m.multiplicity;
      payload["range"] = coefficients(m).range();
      const GenericityReport gen = classify_genericity(m);
      payload["genericity"] = json{{"generic", gen.generic},
                                   {"strongly_generic", gen.strongly_generic},
                                   {"colliding_pairs", gen.colliding_pairs.size()},
                                   {"mutually_inverse_pairs", gen.mutually_inverse_pairs.size()}};
      if (m.multiplicity == 2) {
        const LengthTable xi = correlation_lengths(m);
        json xit = json::array();
        for (int alpha = xi.alpha_min - 1; alpha <= xi.alpha_max + 1; ++alpha) {
          const auto [channel, value] = xi.channel(alpha);
          json row{{"alpha", alpha}};
          switch (channel) {
            case DecayChannel::long_range_order: row["channel"] = "order_parameter"; break;
            case DecayChannel::finite:
              row["channel"] = "finite";
              row["xi"] = value;
              break;
            case DecayChannel::infinite: row["channel"] = "infinite"; break;
          }
          xit.push_back(row);
        }
        payload["xi"] = xit;
        payload["order_parameter"] = order_parameter(m);
      }
      const BondBounds bounds = bond_dimension_bounds(m);
      payload["chi"] = json{{"lower", bounds.chi_lower},
                            {"upper", bounds.chi_upper},
                            {"lower_verified", bounds.lower_verified},
                            {"upper_conjectured_optimal", true}};
      if (!bounds.lower_verified)
        warnings.push_back("model is not strongly generic; chi lower bound unverified");
      payload["warnings"] = warnings;
      out.write(envelope("analyze", m, payload, warnings).dump(2));
    } else if (*strcorr) {
      const Range ar = parse_range(alpha_range, "--alpha");
      const Range nr = parse_range(n_range, "--N");
      const GenericityReport gen = classify_genericity(m);
      if (!gen.generic && !strict)
        warnings.push_back("non-generic model: values perturbed and extrapolated");
      std::ostringstream csv;
      const bool single_alpha = ar.lo == ar.hi;
      csv << (single_alpha ? "N,value,dominant_rM\n" : "alpha,N,value,dominant_rM\n");
      json rows = json::array();
      json series_list = json::array();
      for (int alpha = ar.lo; alpha <= ar.hi; ++alpha) {
        double dom = 0.0;
        if (gen.generic) {
          series_list.push_back(series_to_json(correlator_series(m, alpha)));
          const auto groups = asymptotic_terms(m, alpha, 1);
          if (!groups.empty()) dom = groups.front().abs_r;
        }
        for (int N = nr.lo; N <= nr.hi; ++N) {
          const double value = m.is_bdi() ? string_correlator(m, alpha, N, sopt)
                                          : aiii_string_correlator(m, alpha, N, sopt);
          if (!single_alpha) csv << alpha << ',';
          csv << N << ',' << fmt17(value) << ',' << fmt17(dom) << '\n';
          rows.push_back(json{{"alpha", alpha}, {"N", N}, {"value", value}, {"dominant_rM", dom}});
        }
      }
      if (format == "csv") {
        out.write(csv.str());
      } else {
        out.write(envelope("string-corr", m, json{{"values", rows}, {"series", series_list}},
                           warnings)
                      .dump(2));
      }
    } else if (*corrmat) {
      const Range nr = parse_range(n_range, "--N");
      if (with_lambda) {
        const cplx lambda = parse_lambda(lambda_text);
        json rows = json::array();
        for (int N = nr.lo; N <= nr.hi; ++N) {
          json row = determinant_to_json(char_poly_det(m, lambda, N));
          row["N"] = N;
          rows.push_back(row);
        }
        out.write(envelope("corr-matrix", m, rows, warnings).dump(2));
      } else {
        std::vector<SpectralReport> reports;
        for (int N = nr.lo; N <= nr.hi; ++N) reports.push_back(correlation_spectrum(m, N));
        if (format == "csv") {
          out.write(spectral_reports_csv(reports));
        } else {
          json rows = json::array();
          for (const SpectralReport& r : reports) rows.push_back(spectral_to_json(r));
          out.write(envelope("corr-matrix", m, rows, warnings).dump(2));
        }
      }
    } else if (*efp) {
      const Range nr = parse_range(n_range, "--N");
      std::ostringstream csv;
      csv << "N,value\n";
      json rows = json::array();
      for (int N = nr.lo; N <= nr.hi; ++N) {
        const double value = emptiness_formation(m, N);
        csv << N << ',' << fmt17(value) << '\n';
        rows.push_back(json{{"N", N}, {"value", value}});
      }
      if (format == "csv") {
        out.write(csv.str());
      } else {
        out.write(envelope("efp", m, rows, warnings).dump(2));
      }
    } else if (*transfer) {
      const TransferReport rep = transfer_eigenvalues(m);
      json payload = transfer_to_json(rep);
      payload["chi_upper_conjectured_optimal"] = true;
      out.write(envelope("transfer", m, payload, warnings).dump(2));
    } else if (*approx) {
      const Range mr = parse_range(m_range, "--m");
      std::vector<int> orders;
      for (int k = std::max(1, mr.lo); k <= mr.hi; ++k) orders.push_back(k);
      const auto rows = order_parameter_convergence(m, orders);
      std::ostringstream csv;
      csv << "m,error,log_error\n";
      json jrows = json::array();
      for (const ConvergenceRow& r : rows) {
        csv << r.order << ',' << fmt17(r.error) << ',' << fmt17(r.log_error) << '\n';
        jrows.push_back(json{{"m", r.order}, {"error", r.error}, {"log_error", r.log_error}});
      }
      if (format == "csv") {
        out.write(csv.str());
      } else {
        out.write(envelope("approximate", m, jrows, warnings).dump(2));
      }
    } else if (*verify) {
      const Range ar = parse_range(alpha_range, "--alpha");
      const Range nr = parse_range(n_range, "--N");
      json rows = json::array();
      std::ostringstream table;
      int failures = 0;
      table << "alpha\\N";
      for (int N = nr.lo; N <= nr.hi; ++N) table << ' ' << N;
      table << '\n';
      for (int alpha = ar.lo; alpha <= ar.hi; ++alpha) {
        table << alpha << "      ";
        for (int N = nr.lo; N <= nr.hi; ++N) {
          const double closed = m.is_bdi() ? string_correlator(m, alpha, N, sopt)
                                           : aiii_string_correlator(m, alpha, N, sopt);
          const double oracle = string_correlator_oracle(m, alpha, N);
          const CorrelatorSeries series = correlator_series(m, alpha);
          const double tol =
              N >= series.N_alpha
                  ? std::max(1e-8 * std::max(std::abs(closed), std::abs(oracle)), 1e-10)
                  : std::max(1e-6 * std::max(std::abs(closed), std::abs(oracle)), 1e-8);
          const bool pass = std::abs(closed - oracle) <= tol;
          if (!pass) ++failures;
          table << ' ' << (pass ? '.' : 'X');
          rows.push_back(json{{"alpha", alpha},
                              {"N", N},
                              {"closed", closed},
                              {"oracle", oracle},
                              {"pass", pass}});
        }
        table << '\n';
      }
      table << (failures == 0 ? "all channels match the oracle\n"
                              : std::to_string(failures) + " mismatches\n");
      if (failures > 0) warnings.push_back("closed form / oracle mismatches detected");
      std::cout << table.str();
      out.write(envelope("verify", m, rows, warnings).dump(2));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  if (strict && !warnings.empty()) return 3;
  return 0;
}

}  // namespace toeplitz_chains
