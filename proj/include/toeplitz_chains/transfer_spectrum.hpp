#ifndef TOEPLITZ_CHAINS_TRANSFER_SPECTRUM_HPP
#define TOEPLITZ_CHAINS_TRANSFER_SPECTRUM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "toeplitz_chains/model.hpp"

namespace toeplitz_chains {

struct BondBounds {
  int chi_lower = 1;
  int chi_upper = 1;
  bool lower_verified = true;  // false when the model is not strongly generic
};

/// 2^{n_z+n_Z} <= chi^2 lower bound and the range-based upper bound.
BondBounds bond_dimension_bounds(const ModelSpec& m);

/// Transfer-matrix spectrum for strongly generic models with even pole
/// degree: mu(s) = (-sigma)^{|s|} prod_{tau in s} tau over subsets s of
/// S = {z_1..z_nz, 1/Z_1..1/Z_nZ}, plus exact zeros when n_P != n_z + n_Z.
struct TransferReport {
  std::vector<std::pair<std::uint32_t, cplx>> spectrum;  // (subset mask, mu)
  long long zero_eigenvalues = 0;  // padding from the pole-degree mismatch
  bool injective = true;
  int chi_lower = 1, chi_upper = 1;
  std::vector<cplx> eps_levels;
  double theta = 0.0;  // SPt phase, 0 or pi
};

TransferReport transfer_eigenvalues(const ModelSpec& m);

/// True iff the union of r_M over all in-window correlators reproduces every
/// subset product of S (and nothing else) to 1e-10.
bool rM_coverage_check(const ModelSpec& m);

/// Effective-Hamiltonian levels eps_j = -log tau_j (principal branch).
std::vector<cplx> effective_hamiltonian(const ModelSpec& m);

/// Diagonal decomposition of the transfer matrix for
/// f = z^-2 (z-a)^2 (z-b)^2, a in (-1,1), |b| > 1.
struct QuarticDecomposition {
  std::array<cplx, 4> eigenvalues;  // {1, -a, -1/b, a/b}
  double C_X = 0.0, C_Y = 0.0, C_Ztilde = 0.0;
  double Ztilde_shift = 0.0;  // the scalar subtracted from Z
};
QuarticDecomposition quartic_transfer_decomposition(double a, double b);

}  // namespace toeplitz_chains

#endif
