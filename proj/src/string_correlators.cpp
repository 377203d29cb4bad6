#include "toeplitz_chains/string_correlators.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz_chains/symbol.hpp"

namespace toeplitz_chains {
namespace {

// Subsets of {0..n-1} of size k in lexicographic order, passed to fn as an
// ascending index vector.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

cplx ipow(cplx base, int e) {
  cplx r(1.0);
  const cplx b = e >= 0 ? base : 1.0 / base;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

struct SeriesContext {
  const ModelSpec& m;
  bool conj;  // conjugate poles (AIII)
  cplx zc(int j) const { return conj ? std::conj(m.zeros_inside[static_cast<std::size_t>(j)]) : m.zeros_inside[static_cast<std::size_t>(j)]; }
  cplx Zc(int k) const { return conj ? std::conj(m.zeros_outside[static_cast<std::size_t>(k)]) : m.zeros_outside[static_cast<std::size_t>(k)]; }
};

// Case 1 of the exact series: M labels zeros, sizes fixed by alpha.
void build_case1(const SeriesContext& ctx, int alpha, CorrelatorSeries& out) {
  const ModelSpec& m = ctx.m;
  const int nz = m.n_z(), nZ = m.n_Z(), n = nz + nZ;
  const int msize = alpha + m.n_P - nz;
  const int e = nz + nZ - m.n_P - alpha;

  std::vector<cplx> tau;
  for (const cplx& z : m.zeros_inside) tau.push_back(z);
  for (const cplx& Z : m.zeros_outside) tau.push_back(Z);

  cplx zouter(1.0);
  for (int k = 0; k < nZ; ++k) zouter *= ctx.Zc(k);

  cplx fixed(1.0);  // subset-independent pieces of C_M
  for (int l = 0; l < nz; ++l) fixed *= ipow(m.zeros_inside[static_cast<std::size_t>(l)], -e);
  for (int l = 0; l < nz; ++l)
    for (int k = 0; k < nZ; ++k) fixed /= (1.0 / ctx.zc(l) - 1.0 / ctx.Zc(k));

  for_each_subset(n, msize, [&](const std::vector<int>& M) {
    std::vector<char> in_M(static_cast<std::size_t>(n), 0);
    for (int j : M) in_M[static_cast<std::size_t>(j)] = 1;

    cplx r(1.0), C = fixed;
    for (int k = 0; k < n; ++k) {
      if (in_M[static_cast<std::size_t>(k)]) continue;
      r *= tau[static_cast<std::size_t>(k)];
      for (int mm = 0; mm < nZ; ++mm) C *= (tau[static_cast<std::size_t>(k)] - 1.0 / ctx.Zc(mm));
      for (int j : M) C /= (tau[static_cast<std::size_t>(k)] - tau[static_cast<std::size_t>(j)]);
      C *= ipow(tau[static_cast<std::size_t>(k)], -e);
    }
    r /= zouter;
    for (int l = 0; l < nz; ++l)
      for (int j : M) C *= (1.0 / ctx.zc(l) - tau[static_cast<std::size_t>(j)]);

    out.terms.push_back({M, r, C});
  });
}

// Case 2: M labels inverse zeros.
void build_case2(const SeriesContext& ctx, int alpha, CorrelatorSeries& out) {
  const ModelSpec& m = ctx.m;
  const int nz = m.n_z(), nZ = m.n_Z(), n = nz + nZ;
  const int msize = 2 * nz + nZ - m.n_P - alpha;
  const int e2 = m.n_P + alpha - nz - nZ;

  std::vector<cplx> tau;
  for (const cplx& z : m.zeros_inside) tau.push_back(1.0 / z);
  for (const cplx& Z : m.zeros_outside) tau.push_back(1.0 / Z);

  cplx zprod(1.0);
  for (const cplx& z : m.zeros_inside) zprod *= z;
  if (ctx.conj)
    for (const cplx& Z : m.zeros_outside) zprod *= Z / std::conj(Z);

  cplx fixed(1.0);
  for (int l = 0; l < nZ; ++l) fixed *= ipow(ctx.Zc(l), e2);
  for (int l = 0; l < nZ; ++l)
    for (int mm = 0; mm < nz; ++mm) fixed /= (ctx.Zc(l) - ctx.zc(mm));

  for_each_subset(n, msize, [&](const std::vector<int>& M) {
    std::vector<char> in_M(static_cast<std::size_t>(n), 0);
    for (int j : M) in_M[static_cast<std::size_t>(j)] = 1;

    cplx r = zprod, C = fixed;
    for (int k = 0; k < n; ++k) {
      if (in_M[static_cast<std::size_t>(k)]) continue;
      r *= tau[static_cast<std::size_t>(k)];
      for (int mm = 0; mm < nz; ++mm) C *= (tau[static_cast<std::size_t>(k)] - ctx.zc(mm));
      for (int j : M) C /= (tau[static_cast<std::size_t>(k)] - tau[static_cast<std::size_t>(j)]);
      C *= ipow(tau[static_cast<std::size_t>(k)], -e2);
    }
    for (int l = 0; l < nZ; ++l)
      for (int j : M) C *= (ctx.Zc(l) - tau[static_cast<std::size_t>(j)]);

    out.terms.push_back({M, r, C});
  });
}

// n_z = 0 limit of Case 1 (one auxiliary zero sent to the origin): M~ labels
// outside zeros, |M~| = alpha - omega.
void build_no_inside(const SeriesContext& ctx, int alpha, CorrelatorSeries& out) {
  const ModelSpec& m = ctx.m;
  const int nZ = m.n_Z();
  const int msize = alpha + m.n_P;               // alpha - omega
  const int ep = nZ - m.n_P - alpha - 1;         // exponent of the padded form

  std::vector<cplx> tau;
  for (const cplx& Z : m.zeros_outside) tau.push_back(Z);
  cplx zouter(1.0);
  for (int k = 0; k < nZ; ++k) zouter *= ctx.Zc(k);

  for_each_subset(nZ, msize, [&](const std::vector<int>& M) {
    std::vector<char> in_M(static_cast<std::size_t>(nZ), 0);
    for (int j : M) in_M[static_cast<std::size_t>(j)] = 1;

    cplx r(1.0), C(1.0);
    for (int k = 0; k < nZ; ++k) {
      if (in_M[static_cast<std::size_t>(k)]) continue;
      r *= tau[static_cast<std::size_t>(k)];
      for (int mm = 0; mm < nZ; ++mm) C *= (tau[static_cast<std::size_t>(k)] - 1.0 / ctx.Zc(mm));
      C *= ipow(tau[static_cast<std::size_t>(k)], -ep - 1);
      for (int j : M) C /= (tau[static_cast<std::size_t>(k)] - tau[static_cast<std::size_t>(j)]);
    }
    r /= zouter;
    out.terms.push_back({M, r, C});
  });
}

// n_Z = 0 limit of Case 2 (padded pole sent to infinity): M~ labels inverse
// inside zeros, |M~| = omega - alpha.
void build_no_outside(const SeriesContext& ctx, int alpha, CorrelatorSeries& out) {
  const ModelSpec& m = ctx.m;
  const int nz = m.n_z();
  const int msize = 2 * nz - m.n_P - alpha;      // omega - alpha
  const int e2p = m.n_P + alpha - nz - 1;

  std::vector<cplx> tau;
  for (const cplx& z : m.zeros_inside) tau.push_back(1.0 / z);
  cplx zprod(1.0);
  for (const cplx& z : m.zeros_inside) zprod *= z;

  for_each_subset(nz, msize, [&](const std::vector<int>& M) {
    std::vector<char> in_M(static_cast<std::size_t>(nz), 0);
    for (int j : M) in_M[static_cast<std::size_t>(j)] = 1;

    cplx r = zprod, C(1.0);
    for (int k = 0; k < nz; ++k) {
      if (in_M[static_cast<std::size_t>(k)]) continue;
      r *= tau[static_cast<std::size_t>(k)];
      for (int mm = 0; mm < nz; ++mm) C *= (tau[static_cast<std::size_t>(k)] - ctx.zc(mm));
      C *= ipow(tau[static_cast<std::size_t>(k)], -e2p - 1);
      for (int j : M) C /= (tau[static_cast<std::size_t>(k)] - tau[static_cast<std::size_t>(j)]);
    }
    out.terms.push_back({M, r, C});
  });
}

ModelSpec perturbed_model(const ModelSpec& m, double eps) {
  // Deterministic relative magnitude perturbation: every zero scales by a
  // distinct real factor, conjugate partners by the same factor so a BDI
  // model stays BDI.
  ModelSpec out = m;
  int counter = 1;
  auto scale = [&](std::vector<cplx>& zeros) {
    std::vector<char> done(zeros.size(), 0);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (done[i]) continue;
      const double factor = 1.0 + eps * static_cast<double>(counter++);
      const cplx before = zeros[i];
      zeros[i] *= factor;
      done[i] = 1;
      if (std::abs(before.imag()) <= 1e-12 * (1.0 + std::abs(before))) continue;  // real zero
      for (std::size_t j = i + 1; j < zeros.size(); ++j) {
        if (!done[j] && std::abs(zeros[j] - std::conj(before)) <= 1e-12 * (1.0 + std::abs(before))) {
          zeros[j] *= factor;
          done[j] = 1;
          break;
        }
      }
    }
  };
  scale(out.zeros_inside);
  scale(out.zeros_outside);
  return validate_model(out);
}

double correlator_value(const ModelSpec& m, int alpha, int N, const StringOptions& options,
                        bool aiii) {
  if (m.multiplicity != 2)
    throw OddMultiplicity("string correlators require a multiplicity-2 model");
  const GenericityReport gen = classify_genericity(m);
  if (!gen.generic) {
    if (options.strict)
      throw NonGenericNeedsLimit("non-generic model; enable perturbation or take limits");
    const ModelSpec m1 = perturbed_model(m, options.perturb_eps);
    const ModelSpec m2 = perturbed_model(m, options.perturb_eps * 0.5);
    const double v1 = correlator_value(m1, alpha, N, {true, 0.0}, aiii);
    const double v2 = correlator_value(m2, alpha, N, {true, 0.0}, aiii);
    return 2.0 * v2 - v1;  // two-point Richardson in the perturbation
  }

  const CorrelatorSeries series = correlator_series(m, alpha);
  if (series.trivial_delta || N >= series.N_alpha) return series.evaluate(N);

  // Below N_alpha: epsilon-limit determinant route.
  const RationalSymbol sym = aiii ? aiii_string_symbol(m, alpha) : bdi_string_symbol(m, alpha);
  const DeterminantResult det = day_with_limit(sym, N);
  if (aiii) return std::norm(det.value);
  const double sign = (static_cast<long long>(N) * (alpha - 1)) % 2 ? -1.0 : 1.0;
  return sign * det.value.real();
}

}  // namespace

cplx CorrelatorSeries::raw_sum(int N) const {
  cplx acc(0.0);
  for (const SubsetTerm& t : terms) acc += t.C * std::pow(t.r, static_cast<double>(N));
  return acc;
}

double CorrelatorSeries::osc(int N) const {
  double s = (static_cast<long long>(N) * osc_parity) % 2 ? -1.0 : 1.0;
  if (sigma_negative && N % 2) s = -s;
  return s;
}

double CorrelatorSeries::evaluate(int N) const {
  if (trivial_delta) {
    if (terms.empty()) return 0.0;
    return cls == SymmetryClass::AIII ? 1.0 : osc(N);
  }
  const cplx sum = raw_sum(N);
  if (cls == SymmetryClass::AIII) return std::norm(sum);
  return osc(N) * sum.real();
}

CorrelatorSeries correlator_series(const ModelSpec& m, int alpha) {
  if (m.multiplicity != 2)
    throw OddMultiplicity("correlator series require a multiplicity-2 model");
  const int nz = m.n_z(), nZ = m.n_Z();
  if (nz + nZ > 20) throw SubsetExplosion("n_z + n_Z exceeds the subset cap of 20");

  CorrelatorSeries out;
  out.cls = m.cls;
  out.alpha = alpha;
  out.osc_parity = ((m.n_P + 1) % 2 + 2) % 2;
  out.sigma_negative = m.is_bdi() && m.sigma() < 0;
  out.N_alpha = std::max(std::abs(nz + nZ - m.n_P - alpha), 1);

  const int omega = winding_number(m);
  if (nz == 0 && nZ == 0) {
    out.trivial_delta = true;
    if (alpha == -m.n_P) out.terms.push_back({{}, cplx(1.0), cplx(1.0)});
    return out;
  }
  if (alpha < omega - nz || alpha > omega + nZ) return out;  // exact zero

  const SeriesContext ctx{m, !m.is_bdi()};
  if (nz == 0) {
    build_no_inside(ctx, alpha, out);
  } else if (nZ == 0) {
    build_no_outside(ctx, alpha, out);
  } else if (alpha <= omega + nZ - nz) {
    build_case1(ctx, alpha, out);
  } else {
    build_case2(ctx, alpha, out);
  }
  return out;
}

double string_correlator(const ModelSpec& m, int alpha, int N, StringOptions options) {
  if (!m.is_bdi()) throw SpecError("string_correlator expects a BDI model");
  if (N < 1) throw UsageError("N must be positive");
  return correlator_value(m, alpha, N, options, false);
}

double aiii_string_correlator(const ModelSpec& m, int alpha, int N, StringOptions options) {
  if (N < 1) throw UsageError("N must be positive");
  return correlator_value(m, alpha, N, options, true);
}

double string_correlator_oracle(const ModelSpec& m, int alpha, int N) {
  if (N < 1) throw UsageError("N must be positive");
  const bool aiii = !m.is_bdi();
  const RationalSymbol sym = aiii ? aiii_string_symbol(m, alpha) : bdi_string_symbol(m, alpha);
  const DeterminantResult det = numeric_symbol_det(sym, N);
  if (aiii) return std::norm(det.value);
  const double sign = (static_cast<long long>(N) * (alpha - 1)) % 2 ? -1.0 : 1.0;
  return sign * det.value.real();
}

double order_parameter(const ModelSpec& m) {
  const ModelSpec stripped = strip_inverse_pairs(m);
  // Zero multiset with multiplicities; the quarter-power of the generic
  // formula gives the special-class expression for doubled zeros.
  std::vector<cplx> zs, Zs;
  for (const cplx& z : stripped.zeros_inside)
    for (int k = 0; k < stripped.multiplicity; ++k) zs.push_back(z);
  for (const cplx& Z : stripped.zeros_outside)
    for (int k = 0; k < stripped.multiplicity; ++k) Zs.push_back(Z);

  const bool conj = !m.is_bdi();
  cplx num(1.0), den(1.0);
  for (const cplx& z1 : zs)
    for (const cplx& z2 : zs) num *= (1.0 - z1 * (conj ? std::conj(z2) : z2));
  for (const cplx& Z1 : Zs)
    for (const cplx& Z2 : Zs) num *= (1.0 - 1.0 / (Z1 * (conj ? std::conj(Z2) : Z2)));
  for (const cplx& z : zs)
    for (const cplx& Z : Zs) {
      const cplx f = 1.0 - z / Z;
      den *= conj ? cplx(std::norm(f), 0.0) : f * f;
    }
  const double ratio = std::abs(num / den);
  return std::pow(ratio, conj ? 0.5 : 0.25);
}

std::pair<DecayChannel, double> LengthTable::channel(int alpha) const {
  if (alpha == omega) return {DecayChannel::long_range_order, std::numeric_limits<double>::infinity()};
  auto it = xi.find(alpha);
  if (it == xi.end()) return {DecayChannel::infinite, std::numeric_limits<double>::infinity()};
  return {DecayChannel::finite, it->second};
}

LengthTable correlation_lengths(const ModelSpec& m) {
  if (m.multiplicity != 2)
    throw OddMultiplicity("correlation lengths require a multiplicity-2 model");
  LengthTable table;
  table.omega = winding_number(m);
  table.alpha_min = table.omega - m.n_z();
  table.alpha_max = table.omega + m.n_Z();
  for (int alpha = table.alpha_min; alpha <= table.alpha_max; ++alpha) {
    if (alpha == table.omega) continue;
    double inv_xi = 0.0;
    if (alpha < table.omega) {
      for (int j = 0; j < table.omega - alpha; ++j)
        inv_xi += std::log(1.0 / std::abs(m.zeros_inside[static_cast<std::size_t>(j)]));
    } else {
      for (int j = 0; j < alpha - table.omega; ++j)
        inv_xi += std::log(std::abs(m.zeros_outside[static_cast<std::size_t>(j)]));
    }
    table.xi[alpha] = 1.0 / inv_xi;
  }
  return table;
}

std::vector<AsymptoticGroup> asymptotic_terms(const ModelSpec& m, int alpha, int k) {
  const CorrelatorSeries series = correlator_series(m, alpha);
  std::vector<SubsetTerm> sorted = series.terms;
  std::sort(sorted.begin(), sorted.end(), [](const SubsetTerm& a, const SubsetTerm& b) {
    if (std::abs(a.r) != std::abs(b.r)) return std::abs(a.r) > std::abs(b.r);
    return a.M < b.M;
  });
  std::vector<AsymptoticGroup> groups;
  for (const SubsetTerm& t : sorted) {
    const double ar = std::abs(t.r);
    if (!groups.empty() && std::abs(groups.back().abs_r - ar) <= 1e-10 * (1.0 + ar)) {
      groups.back().terms.push_back(t);
    } else {
      if (static_cast<int>(groups.size()) == k) break;
      groups.push_back({ar, {t}});
    }
  }
  return groups;
}

double emptiness_formation(const ModelSpec& m, int N) {
  if (!m.is_bdi()) throw SpecError("emptiness formation expects a BDI model");
  if (N < 1) throw UsageError("N must be positive");
  const ModelSpec stripped = strip_inverse_pairs(m);
  if (stripped.n_z() == 0 && stripped.n_Z() == 0) {
    if (stripped.n_P != 0) return std::ldexp(1.0, -N);
    return stripped.sigma() > 0 ? 0.0 : 1.0;
  }
  const RationalSymbol sym = efp_symbol(stripped);
  if (sym.trivial) {
    const double a = std::abs(sym.rho);
    return a == 0.0 ? 0.0 : std::pow(a, N);
  }
  const DeterminantResult det = day_with_limit(sym, N);
  return std::exp(det.log_abs);
}

}  // namespace toeplitz_chains
