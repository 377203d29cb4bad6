#ifndef TOEPLITZ_CHAINS_APPROXIMATION_HPP
#define TOEPLITZ_CHAINS_APPROXIMATION_HPP

#include <vector>

#include "toeplitz_chains/model.hpp"

namespace toeplitz_chains {

/// Factorized partial sum of the square-root series:
/// s_m(z) = sum_{l=0}^m (-1)^l binom(1/2, l) z^l = prod_l (1 - lambda_l z),
/// with every |lambda_l| < 1.
struct PartialSumFactorization {
  int order = 0;
  std::vector<cplx> lambda_roots;
  double max_abs = 0.0;

  cplx eval_sum(cplx z) const;      // the coefficient form
  cplx eval_product(cplx z) const;  // the factored form
};

PartialSumFactorization partial_sum_roots(int order);

/// Coefficients of s_m (ascending powers).
std::vector<double> partial_sum_coefficients(int order);

/// Even-multiplicity approximant of a multiplicity-1 model: inside zeros
/// lambda_l z_j, outside zeros Z_k / lambda_p, winding number preserved.
ModelSpec approximate_model(const ModelSpec& target, int order);

struct ConvergenceRow {
  int order = 0;
  double error = 0.0;
  double log_error = 0.0;
};

/// | order_parameter(f_m) - order_parameter(target) | per order m.
std::vector<ConvergenceRow> order_parameter_convergence(const ModelSpec& target,
                                                        const std::vector<int>& orders);

/// Max over samples of | (1-z)^{1/4} - prod_{a,b} (1 - lambda_a lambda_b z) |.
double quarter_root_identity_error(int order, const std::vector<cplx>& z_samples);

/// Default sample grid on |z| <= radius.
std::vector<cplx> quarter_root_grid(double radius = 0.9);

}  // namespace toeplitz_chains

#endif
