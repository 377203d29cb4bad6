#ifndef TOEPLITZ_CHAINS_STRING_CORRELATORS_HPP
#define TOEPLITZ_CHAINS_STRING_CORRELATORS_HPP

#include <map>
#include <optional>
#include <vector>

#include "toeplitz_chains/model.hpp"
#include "toeplitz_chains/toeplitz_engine.hpp"

namespace toeplitz_chains {

/// Exact string-correlator series: <O_a(1) O_a(N+1)> equals
/// osc(N) * sum_M C_M r_M^N for N >= N_alpha (BDI), and |sum_M C_M r_M^N|^2
/// for AIII. osc(N) = (-1)^{N(n_P+1)} times (-1)^N when sigma = -1.
struct CorrelatorSeries {
  SymmetryClass cls = SymmetryClass::BDI;
  int alpha = 0;
  int N_alpha = 1;
  int osc_parity = 0;          // (n_P + 1) mod 2
  bool sigma_negative = false;
  bool trivial_delta = false;  // f = z^{-n_P}: delta_{alpha,-n_P} correlator
  std::vector<SubsetTerm> terms;

  cplx raw_sum(int N) const;
  double osc(int N) const;
  double evaluate(int N) const;
};

struct StringOptions {
  bool strict = false;        // error on non-generic input instead of perturbing
  double perturb_eps = 1e-6;  // relative two-point perturbation
};

/// Build the closed-form series (requires a generic multiplicity-2 model).
CorrelatorSeries correlator_series(const ModelSpec& m, int alpha);

/// <O_a(1) O_a(N+1)> for a BDI chain. Non-generic inputs are perturbed and
/// extrapolated unless options.strict; N below N_alpha goes through the
/// epsilon-limit determinant.
double string_correlator(const ModelSpec& m, int alpha, int N, StringOptions options = {});

/// AIII analogue, |D_N|^2.
double aiii_string_correlator(const ModelSpec& m, int alpha, int N, StringOptions options = {});

/// Independent LU oracle for the same quantity (FFT coefficients, no Day
/// machinery). Valid for every N >= 1.
double string_correlator_oracle(const ModelSpec& m, int alpha, int N);

/// Large-N order parameter; exact in non-generic cases too (mutually inverse
/// pairs are cancelled first).
double order_parameter(const ModelSpec& m);

enum class DecayChannel { long_range_order, finite, infinite };

/// Correlation lengths xi_alpha from the zeros (exact, not fitted).
struct LengthTable {
  int omega = 0;
  int alpha_min = 0, alpha_max = 0;  // window of non-vanishing correlators
  std::map<int, double> xi;          // finite entries, alpha != omega

  std::pair<DecayChannel, double> channel(int alpha) const;
};

LengthTable correlation_lengths(const ModelSpec& m);

/// Series terms grouped by |r_M| (descending), ties merged; top k groups.
struct AsymptoticGroup {
  double abs_r = 0.0;
  std::vector<SubsetTerm> terms;
};
std::vector<AsymptoticGroup> asymptotic_terms(const ModelSpec& m, int alpha, int k);

/// Emptiness formation probability P(N) >= 0.
double emptiness_formation(const ModelSpec& m, int N);

}  // namespace toeplitz_chains

#endif
