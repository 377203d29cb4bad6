#include "toeplitz_chains/correlation_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz_chains/string_correlators.hpp"
#include "toeplitz_chains/symbol.hpp"

namespace toeplitz_chains {
namespace {

constexpr double kTrivialThreshold = 1e-9;

double renyi_entropy(const std::vector<double>& nus, double order) {
  double s = 0.0;
  for (double nu : nus) {
    const double p = 0.5 * (1.0 + std::min(std::abs(nu), 1.0));
    const double q = 1.0 - p;
    if (order == 1.0) {
      if (p > 0 && p < 1) s += -p * std::log(p) - q * std::log(q);
    } else {
      s += std::log(std::pow(p, order) + std::pow(q, order)) / (1.0 - order);
    }
  }
  return s;
}

}  // namespace

double binary_entropy(double nu) {
  const double p = 0.5 * (1.0 + std::min(std::abs(nu), 1.0));
  const double q = 1.0 - p;
  if (p <= 0.0 || q <= 0.0) return 0.0;
  return -p * std::log(p) - q * std::log(q);
}

std::vector<double> SpectralReport::nontrivial() const {
  std::vector<double> out;
  for (double v : nu)
    if (std::abs(std::abs(v) - 1.0) > kTrivialThreshold) out.push_back(v);
  return out;
}

SpectralReport correlation_spectrum(const ModelSpec& m, int N) {
  if (N < 1) throw UsageError("correlation_spectrum requires N >= 1");
  SpectralReport rep;
  rep.N = N;
  rep.aiii = !m.is_bdi();

  const std::vector<cplx> ev = block_toeplitz_eigen(block_symbol_sampler(m, cplx(0.0)), N);
  if (!rep.aiii) {
    // Eigenvalues come in +-i nu pairs; average each pair's modulus.
    std::vector<double> mods(ev.size());
    std::transform(ev.begin(), ev.end(), mods.begin(), [](const cplx& e) { return std::abs(e); });
    std::sort(mods.begin(), mods.end());
    for (std::size_t i = 0; i + 1 < mods.size(); i += 2)
      rep.nu.push_back(0.5 * (mods[i] + mods[i + 1]));
    std::sort(rep.nu.rbegin(), rep.nu.rend());
  } else {
    // A^_N = -T[Phi^(.,0)]; eigenvalues are real in [-1, 1].
    for (const cplx& e : ev) rep.nu.push_back(-e.real());
    std::sort(rep.nu.begin(), rep.nu.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
  }

  for (double v : rep.nu)
    if (std::abs(std::abs(v) - 1.0) > kTrivialThreshold) ++rep.d;
  rep.entropies[1.0] = renyi_entropy(rep.nu, 1.0);
  rep.entropies[2.0] = renyi_entropy(rep.nu, 2.0);
  return rep;
}

CharPolyStructure char_poly_structure(const ModelSpec& m, const std::vector<int>& N_list) {
  if (N_list.empty()) throw UsageError("char_poly_structure needs at least one N");
  std::vector<int> sorted = N_list;
  std::sort(sorted.begin(), sorted.end());

  CharPolyStructure out;
  std::map<int, int> d_of_N;
  for (int N : sorted) {
    const SpectralReport rep = correlation_spectrum(m, N);
    std::vector<double> xt;
    for (double v : rep.nontrivial()) xt.push_back(v * v);
    std::sort(xt.rbegin(), xt.rend());
    out.xtilde[N] = xt;
    d_of_N[N] = rep.d;
    out.d = std::max(out.d, rep.d);
  }
  if (sorted.size() >= 2) {
    const int d_last = d_of_N[sorted.back()];
    const int d_prev = d_of_N[sorted[sorted.size() - 2]];
    if (d_last > d_prev)
      throw StructureViolation("non-trivial eigenvalue count still growing at the largest N");
  }
  return out;
}

double det_identity_residual(const ModelSpec& m, int N) {
  if (!m.is_bdi()) throw SpecError("det identity is a BDI statement");
  const DeterminantResult det = block_toeplitz_det(block_symbol_sampler(m, cplx(0.0)), N);
  const double corr = string_correlator(m, 0, N);
  const double lhs = det.value.real();
  const double rhs = corr * corr;
  // Both sides of an exactly-zero identity come back as rounding dust; the
  // floor keeps those from reading as a 100% relative disagreement.
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-16});
}

DeterminantResult char_poly_det(const ModelSpec& m, cplx lambda, int N) {
  return block_toeplitz_det(block_symbol_sampler(m, lambda), N);
}

WidomResult widom_limit(const ModelSpec& m, cplx lambda, int N_max) {
  if (N_max < 3) throw UsageError("widom_limit needs N_max >= 3");
  const cplx log_base = std::log(1.0 - lambda * lambda);
  std::vector<cplx> w;
  for (int N = 1; N <= N_max; ++N) {
    const DeterminantResult det = char_poly_det(m, lambda, N);
    w.push_back(std::exp(cplx(det.log_abs, 0.0) - static_cast<double>(N) * log_base) * det.phase);
  }

  // Aitken delta-squared down the tail of the sequence.
  std::vector<cplx> acc;
  for (std::size_t i = 0; i + 2 < w.size(); ++i) {
    const cplx d1 = w[i + 1] - w[i];
    const cplx d2 = w[i + 2] - w[i + 1];
    const cplx den = d2 - d1;
    acc.push_back(std::abs(den) > 1e-300 ? w[i + 2] - d2 * d2 / den : w[i + 2]);
  }
  WidomResult out;
  out.value = acc.back();
  const cplx prev = acc.size() >= 2 ? acc[acc.size() - 2] : w.back();
  out.converged = std::abs(out.value - prev) <= 1e-4 * std::max(1.0, std::abs(out.value));
  return out;
}

}  // namespace toeplitz_chains
