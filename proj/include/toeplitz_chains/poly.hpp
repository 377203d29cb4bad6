#ifndef TOEPLITZ_CHAINS_POLY_HPP
#define TOEPLITZ_CHAINS_POLY_HPP

#include <vector>

#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

// Dense univariate polynomial helpers over complex coefficients.
// Coefficient vectors are ascending: c[k] multiplies z^k.

template <typename Scalar>
Scalar poly_eval(const std::vector<Scalar>& c, Scalar z) {
  Scalar acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <typename Scalar>
std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Scalar> out(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename Scalar>
std::vector<Scalar> poly_derivative(const std::vector<Scalar>& c) {
  if (c.size() <= 1) return {Scalar(0)};
  std::vector<Scalar> out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * Scalar(double(k));
  return out;
}

template <typename Scalar>
std::vector<Scalar> poly_from_roots(const std::vector<Scalar>& roots) {
  std::vector<Scalar> out{Scalar(1)};
  for (const Scalar& r : roots) out = poly_mul(out, std::vector<Scalar>{-r, Scalar(1)});
  return out;
}

// Roots of a complex polynomial via the companion-matrix eigenvalues,
// refined with one Newton step per root.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

}  // namespace toeplitz_chains

#endif
