#include "toeplitz_chains/approximation.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz_chains/poly.hpp"
#include "toeplitz_chains/string_correlators.hpp"

namespace toeplitz_chains {

std::vector<double> partial_sum_coefficients(int order) {
  if (order < 1) throw UsageError("partial sums start at order 1");
  // binom(1/2, l+1) = binom(1/2, l) (1/2 - l) / (l + 1); factorial forms
  // overflow long before the recurrence loses accuracy.
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  double binom = 1.0;
  for (int l = 0; l <= order; ++l) {
    c[static_cast<std::size_t>(l)] = (l % 2 ? -1.0 : 1.0) * binom;
    binom *= (0.5 - l) / (l + 1.0);
  }
  return c;
}

cplx PartialSumFactorization::eval_sum(cplx z) const {
  const std::vector<double> c = partial_sum_coefficients(order);
  cplx acc(0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx PartialSumFactorization::eval_product(cplx z) const {
  cplx acc(1.0);
  for (const cplx& l : lambda_roots) acc *= (1.0 - l * z);
  return acc;
}

PartialSumFactorization partial_sum_roots(int order) {
  PartialSumFactorization out;
  out.order = order;
  const std::vector<double> c = partial_sum_coefficients(order);
  std::vector<cplx> cc(c.begin(), c.end());
  for (const cplx& root : poly_roots(cc)) out.lambda_roots.push_back(1.0 / root);
  // Snap conjugate dust on real roots.
  for (cplx& l : out.lambda_roots)
    if (std::abs(l.imag()) < 1e-12 * (1.0 + std::abs(l))) l = cplx(l.real(), 0.0);
  std::sort(out.lambda_roots.begin(), out.lambda_roots.end(), [](const cplx& x, const cplx& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  for (const cplx& l : out.lambda_roots) out.max_abs = std::max(out.max_abs, std::abs(l));
  return out;
}

ModelSpec approximate_model(const ModelSpec& target, int order) {
  if (order < 1) throw UsageError("approximation order must be >= 1");
  const PartialSumFactorization fac = partial_sum_roots(order);

  ModelSpec out;
  out.cls = target.cls;
  out.multiplicity = 2;
  for (const cplx& z : target.zeros_inside)
    for (const cplx& l : fac.lambda_roots) out.zeros_inside.push_back(l * z);
  for (const cplx& Z : target.zeros_outside)
    for (const cplx& l : fac.lambda_roots) out.zeros_outside.push_back(Z / l);

  // Winding number of the target is preserved: omega = 2 n_z - n_P.
  const int omega = winding_number(target);
  out.n_P = 2 * static_cast<int>(out.zeros_inside.size()) - omega;

  if (target.is_bdi()) {
    double sign = target.sigma();
    if (target.n_Z() % 2) sign = -sign;
    cplx Zprod(1.0);
    for (const cplx& Z : target.zeros_outside) Zprod *= Z;
    if (Zprod.real() < 0) sign = -sign;
    out.sigma_phase = cplx(sign, 0.0);
  } else {
    cplx c = target.sigma_phase;
    for (const cplx& Z : target.zeros_outside) c *= -Z;
    for (const cplx& Z : target.zeros_outside)
      for (const cplx& l : fac.lambda_roots) c *= (l / Z) * (l / Z);
    out.sigma_phase = c / std::abs(c);
  }
  return validate_model(out);
}

std::vector<ConvergenceRow> order_parameter_convergence(const ModelSpec& target,
                                                        const std::vector<int>& orders) {
  const double reference = order_parameter(target);
  std::vector<ConvergenceRow> rows;
  for (int m : orders) {
    const double value = order_parameter(approximate_model(target, m));
    ConvergenceRow row;
    row.order = m;
    row.error = std::abs(value - reference);
    row.log_error = row.error > 0 ? std::log10(row.error) : -std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

double quarter_root_identity_error(int order, const std::vector<cplx>& z_samples) {
  const PartialSumFactorization fac = partial_sum_roots(order);
  double worst = 0.0;
  for (const cplx& z : z_samples) {
    cplx prod(1.0);
    for (const cplx& la : fac.lambda_roots)
      for (const cplx& lb : fac.lambda_roots) prod *= (1.0 - la * lb * z);
    const cplx target = std::pow(1.0 - z, 0.25);
    worst = std::max(worst, std::abs(target - prod));
  }
  return worst;
}

std::vector<cplx> quarter_root_grid(double radius) {
  std::vector<cplx> grid{cplx(0.0)};
  for (int ir = 1; ir <= 4; ++ir) {
    const double r = radius * ir / 4.0;
    for (int it = 0; it < 12; ++it) {
      const double th = 2.0 * kPi * it / 12.0;
      grid.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  return grid;
}

}  // namespace toeplitz_chains
