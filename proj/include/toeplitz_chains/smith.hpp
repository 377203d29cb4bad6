#ifndef TOEPLITZ_CHAINS_SMITH_HPP
#define TOEPLITZ_CHAINS_SMITH_HPP

#include <array>
#include <string>
#include <vector>

#include "toeplitz_chains/model.hpp"
#include "toeplitz_chains/poly2.hpp"

namespace toeplitz_chains {

enum class FixtureFamily {
  b_quartic_inside,  // f = z^-1 (z-b)^2, |b| < 1, BDI
  ab_sextic,         // f = z^-2 (z-a)^2 (z-b)^2, BDI (|b| < 1 or |b| > 1)
  aiii_b_quartic     // f = z^-1 (z-b)^2, complex |b| < 1, AIII
};

/// Smith-canonical-form data for one worked matrix polynomial: the second
/// row of y(z, lambda) drives the finite-N determinant ratio, the rest of
/// y and w feed the identity check y a w = diag(1, Delta).
struct SmithFixture {
  FixtureFamily family = FixtureFamily::b_quartic_inside;
  ModelSpec model;
  cplx param_a{0.0};  // unused by the quartic families
  cplx param_b{0.0};

  Poly2 y21, y22;
  std::vector<cplx> tau;                 // 2(n_z + n_Z) roots and inverse roots
  std::vector<cplx> g_tilde, h_tilde;    // univariate coefficient tables
  cplx det_ratio_prefactor{1.0};         // per-N factor multiplying the ratio

  std::array<Poly2, 4> a_entries;        // a11 a12 a21 a22
  Poly2 smith_diag;                      // bottom-right invariant factor
  std::array<Poly2, 4> y_full;
  bool has_w = false;
  std::array<Poly2, 4> w_num;
  std::array<Poly2, 4> w_den;            // lambda-only denominators
};

SmithFixture make_fixture(FixtureFamily family, cplx a, cplx b);

/// Exact characteristic polynomial from the Smith data:
/// (1 - lambda^2)^N prefactor^N det M(N, lambda) / det M(0, lambda).
cplx gorodetsky_ratio(const SmithFixture& fix, int N, cplx lambda);

/// Max relative residual of y a w = diag(1, Delta) over random samples;
/// requires a fixture that carries w.
double smith_identity_residual(const SmithFixture& fix, int samples, unsigned seed);

/// For fixtures without a printed w: verify that w := (y a)^{-1} diag(1,
/// Delta) is a polynomial matrix in z (interpolation residual) and that
/// det y, det w are z-independent. Returns the max relative residual.
double smith_implicit_w_residual(const SmithFixture& fix, cplx lambda, int degree_cap);

std::string fixture_family_name(FixtureFamily f);

}  // namespace toeplitz_chains

#endif
