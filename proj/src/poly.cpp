#include "toeplitz_chains/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace toeplitz_chains {

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
  std::vector<cplx> c = coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) return {};

  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(n);
  const auto dc = poly_derivative(c);
  for (int i = 0; i < n; ++i) {
    cplx r = solver.eigenvalues()(i);
    const cplx fp = poly_eval(dc, r);
    if (std::abs(fp) > 1e-12) {
      const cplx step = poly_eval(c, r) / fp;
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) r -= step;
    }
    roots[i] = r;
  }
  std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace toeplitz_chains
