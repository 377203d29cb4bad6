#ifndef TOEPLITZ_CHAINS_SYMBOL_HPP
#define TOEPLITZ_CHAINS_SYMBOL_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "toeplitz_chains/model.hpp"
#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

/// A scalar rational symbol in the canonical form
///   t(z) = rho * prod_s (z - tau_j) / [ prod_q (1 - z/gamma_j) * prod_p (z - delta_j) ]
/// with |delta_j| < 1 < |gamma_j|. Auxiliary near-zero roots standing for a
/// z^k factor are carried as a count (epsilon_roots) and materialized as
/// eps*x_j, x_j = 1..k, by the evaluation engine. Identity pole/root pairs
/// inserted to satisfy p >= 1, q >= 1 are tracked so the engine can prune
/// their vanishing subsets exactly.
struct RationalSymbol {
  cplx rho{1.0, 0.0};
  std::vector<cplx> numerator_roots;  // exact roots only (no epsilon roots)
  std::vector<cplx> inner_poles;      // delta_j
  std::vector<cplx> outer_poles;      // gamma_j
  int epsilon_roots = 0;

  // Indices (into numerator_roots) of pad roots that coincide with a pole
  // inserted purely to satisfy Day's preconditions; the symbol value is
  // unchanged by them.
  std::vector<int> inner_pad_roots;
  std::vector<int> outer_pad_roots;

  bool trivial = false;      // pure power symbol: rho * z^{trivial_exponent}
  int trivial_exponent = 0;
  bool negate_sign = false;  // global (-1)^N flag recorded for sigma = -1

  int s() const { return static_cast<int>(numerator_roots.size()) + epsilon_roots; }
  int p() const { return static_cast<int>(inner_poles.size()); }
  int q() const { return static_cast<int>(outer_poles.size()); }

  /// Value of the symbol at z (pads cancel, epsilon roots enter as z^k).
  cplx eval(cplx z) const;
};

enum class FourierMethod { residue, fft };

/// Fourier coefficients t~_n over a contiguous index range.
struct FourierSlice {
  int offset = 0;  // index of values.front()
  std::vector<cplx> values;
  FourierMethod method = FourierMethod::residue;

  cplx at(int n) const {
    const int i = n - offset;
    if (i < 0 || i >= static_cast<int>(values.size())) return cplx(0);
    return values[static_cast<std::size_t>(i)];
  }
};

/// String-correlator symbol for a multiplicity-2 BDI model; satisfies
/// (-1)^{N(alpha-1)} <O_a(1) O_a(N+1)> = D_N[t]. Branch fixed so t(1) equals
/// the sign of f(1).
RationalSymbol bdi_string_symbol(const ModelSpec& m, int alpha);

/// AIII variant with conjugated poles; <O~_a O~_a> = |D_N[t]|^2.
RationalSymbol aiii_string_symbol(const ModelSpec& m, int alpha);

/// Symbol of the emptiness formation probability, (1 - f/|f|)/2, in canonical
/// rational form. P(N) = |D_N[t]|.
RationalSymbol efp_symbol(const ModelSpec& m);

/// Fourier coefficients of the normalized two-point symbol
///   t~(z) = prod (z - z_j)(z - Z_k) / prod (1 - z zbar_j)(1 - z Zbar_k)
/// on n in [n_lo, n_hi]. Uses closed-form residue sums when the poles are
/// well separated, otherwise an FFT on the unit circle.
FourierSlice fourier_coefficients(const ModelSpec& m, int n_lo, int n_hi);

/// Same slice, forcing one method (used for cross-validation).
FourierSlice fourier_coefficients_residue(const ModelSpec& m, int n_lo, int n_hi);
FourierSlice fourier_coefficients_fft(const ModelSpec& m, int n_lo, int n_hi);

/// Fourier coefficients of an arbitrary rational symbol via the adaptive FFT
/// oracle (2^14 circle samples, doubled until stable).
FourierSlice symbol_fourier_fft(const std::function<cplx(cplx)>& symbol, int n_lo, int n_hi);

using BlockSampler = std::function<Eigen::Matrix2cd(cplx)>;

/// Unit-circle sampler of the 2x2 block symbol whose block Toeplitz matrix is
/// the subsystem correlation matrix: BDI Phi(z,lambda), AIII Phi^(z,lambda).
BlockSampler block_symbol_sampler(const ModelSpec& m, cplx lambda);

}  // namespace toeplitz_chains

#endif
