#include "toeplitz_chains/transfer_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz_chains/string_correlators.hpp"

namespace toeplitz_chains {
namespace {

std::vector<cplx> subset_base(const ModelSpec& m) {
  std::vector<cplx> S;
  for (const cplx& z : m.zeros_inside) S.push_back(z);
  for (const cplx& Z : m.zeros_outside) S.push_back(1.0 / Z);
  return S;
}

}  // namespace

BondBounds bond_dimension_bounds(const ModelSpec& m) {
  BondBounds out;
  const int K = m.n_z() + m.n_Z();
  out.chi_lower = static_cast<int>(std::ceil(std::pow(2.0, 0.5 * K)));
  out.chi_upper = 1 << ((coefficients(m).range() + 1) / 2);
  out.lower_verified = classify_genericity(m).strongly_generic;
  return out;
}

TransferReport transfer_eigenvalues(const ModelSpec& m) {
  if (m.multiplicity != 2)
    throw OddMultiplicity("transfer spectrum requires a multiplicity-2 model");
  if (!m.is_bdi()) throw SpecError("transfer spectrum is derived for BDI models");
  if (m.n_P % 2 != 0) throw OddWindingUnsupported("no spectrum results for odd pole degree");
  const GenericityReport gen = classify_genericity(m);
  if (!gen.strongly_generic)
    throw NotStronglyGeneric("transfer spectrum needs the strongly generic condition");
  const int K = m.n_z() + m.n_Z();
  if (K > 20) throw SubsetExplosion("n_z + n_Z exceeds the subset cap of 20");

  TransferReport rep;
  const std::vector<cplx> S = subset_base(m);
  const double sigma = m.sigma();
  for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
    cplx mu(1.0);
    int bits = 0;
    for (int i = 0; i < K; ++i)
      if (mask & (1u << i)) {
        mu *= S[static_cast<std::size_t>(i)];
        ++bits;
      }
    if (bits % 2) mu *= -sigma;
    rep.spectrum.emplace_back(mask, mu);
  }
  const int k = std::abs(K - m.n_P);
  if (k > 0 && K + k <= 62) rep.zero_eigenvalues = (1ll << (K + k)) - (1ll << K);

  rep.injective = true;  // dominant eigenvalue mu(empty) = 1 is unique here
  const BondBounds bounds = bond_dimension_bounds(m);
  rep.chi_lower = bounds.chi_lower;
  rep.chi_upper = bounds.chi_upper;
  rep.theta = sigma > 0 ? kPi : 0.0;  // e^{i theta} = -sigma
  for (const cplx& tau : S) rep.eps_levels.push_back(-std::log(tau));
  return rep;
}

bool rM_coverage_check(const ModelSpec& m) {
  if (m.n_P != m.n_z() + m.n_Z())
    throw UsageError("coverage check assumes n_P = n_z + n_Z");
  const int K = m.n_z() + m.n_Z();
  if (K > 16) throw SubsetExplosion("coverage check capped at n_z + n_Z <= 16");

  const std::vector<cplx> S = subset_base(m);
  std::vector<cplx> products;
  for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
    cplx p(1.0);
    for (int i = 0; i < K; ++i)
      if (mask & (1u << i)) p *= S[static_cast<std::size_t>(i)];
    products.push_back(p);
  }

  std::vector<cplx> observed;
  const int omega = winding_number(m);
  for (int alpha = omega - m.n_z(); alpha <= omega + m.n_Z(); ++alpha) {
    const CorrelatorSeries series = correlator_series(m, alpha);
    for (const SubsetTerm& t : series.terms)
      if (std::abs(t.C) > 1e-14) observed.push_back(t.r);
  }

  auto matches = [](const std::vector<cplx>& needles, const std::vector<cplx>& hay) {
    for (const cplx& x : needles) {
      bool found = false;
      for (const cplx& y : hay)
        if (std::abs(x - y) <= 1e-10 * (1.0 + std::abs(x))) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  return matches(products, observed) && matches(observed, products);
}

std::vector<cplx> effective_hamiltonian(const ModelSpec& m) {
  return transfer_eigenvalues(m).eps_levels;
}

QuarticDecomposition quartic_transfer_decomposition(double a, double b) {
  if (!(std::abs(a) < 1.0) || !(std::abs(b) > 1.0))
    throw UsageError("quartic decomposition needs |a| < 1 < |b|");
  if (std::abs(a * b - 1.0) < 1e-12) throw DegenerateQuartic("b = 1/a is a product state");

  QuarticDecomposition out;
  out.eigenvalues = {cplx(1.0), cplx(-a), cplx(-1.0 / b), cplx(a / b)};
  out.C_X = (1.0 - a * a) * (1.0 - a * b) / (a - b);
  out.C_Y = (1.0 - 1.0 / (b * b)) * (1.0 - a * b) / (b - a);
  out.C_Ztilde = -out.C_X * out.C_Y;
  out.Ztilde_shift = ((a * a - 1.0) * b * b - a * b + 1.0) / (b * (a - b));
  return out;
}

}  // namespace toeplitz_chains
