#ifndef TOEPLITZ_CHAINS_CORRELATION_MATRIX_HPP
#define TOEPLITZ_CHAINS_CORRELATION_MATRIX_HPP

#include <map>
#include <vector>

#include "toeplitz_chains/model.hpp"
#include "toeplitz_chains/toeplitz_engine.hpp"

namespace toeplitz_chains {

/// Entanglement data of an N-site block. nu holds the non-negative
/// correlation-matrix eigenvalues for BDI and the real eigenvalues of
/// A^_N = 1 - 2 C_N for AIII, sorted by decreasing modulus.
struct SpectralReport {
  int N = 0;
  bool aiii = false;
  std::vector<double> nu;
  int d = 0;  // non-trivial count, | |nu| - 1 | > 1e-9
  std::map<double, double> entropies;  // Renyi order -> value (order 1 = von Neumann)

  std::vector<double> nontrivial() const;
};

SpectralReport correlation_spectrum(const ModelSpec& m, int N);

/// Corollary-2 structure over a range of subsystem sizes: the stabilized
/// non-trivial count d and the table x~_j(N) = nu_j^2.
struct CharPolyStructure {
  int d = 0;
  std::map<int, std::vector<double>> xtilde;
};
CharPolyStructure char_poly_structure(const ModelSpec& m, const std::vector<int>& N_list);

/// Relative residual of det A_N = <O_0 O_0>^2.
double det_identity_residual(const ModelSpec& m, int N);

/// Characteristic polynomial det(i lambda - A_N) via the numeric block route
/// (det(lambda - A^_N) for AIII).
DeterminantResult char_poly_det(const ModelSpec& m, cplx lambda, int N);

struct WidomResult {
  cplx value{0.0};
  bool converged = false;
};

/// Aitken-accelerated limit of det(i lambda - A_N) / (1 - lambda^2)^N.
WidomResult widom_limit(const ModelSpec& m, cplx lambda, int N_max);

/// Binary entropy of (1 + nu) / 2; the per-mode entanglement contribution.
double binary_entropy(double nu);

}  // namespace toeplitz_chains

#endif
