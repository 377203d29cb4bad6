#ifndef TOEPLITZ_CHAINS_TOEPLITZ_ENGINE_HPP
#define TOEPLITZ_CHAINS_TOEPLITZ_ENGINE_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "toeplitz_chains/symbol.hpp"
#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

/// One geometric contribution C_M r_M^N to an exact determinant.
struct SubsetTerm {
  std::vector<int> M;  // ascending indices into the symbol's numerator roots
  cplx r{0.0};
  cplx C{0.0};
};

struct DeterminantResult {
  cplx value{0.0};
  double log_abs = -std::numeric_limits<double>::infinity();
  cplx phase{1.0};
  std::optional<std::vector<SubsetTerm>> terms;
  bool out_of_range = false;        // |log_abs| >= 700: value over/underflowed
  bool condition_warning = false;   // oracle condition estimate > 1e12
  double condition_estimate = 0.0;

  static DeterminantResult from_value(cplx v);
  static DeterminantResult from_log(double log_abs, cplx phase);
};

/// Number of subsets Day's sum runs over for this symbol; throws
/// SubsetExplosion above the enumeration cap.
long long day_term_count(const RationalSymbol& sym);

/// N >= N_alpha threshold under which the epsilon-root limit needs the
/// two-point extrapolation instead of the exact reduced sum.
int symbol_N_alpha(const RationalSymbol& sym);

/// Day's exact determinant for a rational symbol whose numerator roots are
/// pairwise distinct after materializing epsilon roots at a finite epsilon.
DeterminantResult day_determinant(const RationalSymbol& sym, int N);

/// Day evaluation with the epsilon-root limit taken: exact reduced sum for
/// N >= N_alpha, Richardson-extrapolated epsilon sweep below.
DeterminantResult day_with_limit(const RationalSymbol& sym, int N);

/// LU-based numeric Toeplitz determinant; provider(n) must cover
/// n in [-(N-1), N-1].
DeterminantResult numeric_toeplitz_det(const std::function<cplx(int)>& provider, int N);
DeterminantResult numeric_toeplitz_det(const FourierSlice& coeffs, int N);

/// Numeric determinant of the N x N Toeplitz matrix of a rational symbol
/// (FFT coefficients; independent of Day's formula).
DeterminantResult numeric_symbol_det(const RationalSymbol& sym, int N);

/// Dense 2N x 2N block Toeplitz matrix of a 2x2 symbol sampler.
Eigen::MatrixXcd block_toeplitz_matrix(const BlockSampler& sampler, int N);

/// Eigenvalues of the 2N x 2N block Toeplitz matrix.
std::vector<cplx> block_toeplitz_eigen(const BlockSampler& sampler, int N);

/// Log-domain determinant of the block Toeplitz matrix.
DeterminantResult block_toeplitz_det(const BlockSampler& sampler, int N);

}  // namespace toeplitz_chains

#endif
