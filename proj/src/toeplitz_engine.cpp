#include "toeplitz_chains/toeplitz_engine.hpp"

#include <algorithm>
#include <cmath>

#include "toeplitz_chains/fft.hpp"
#include "toeplitz_chains/parallel.hpp"

namespace toeplitz_chains {
namespace {

constexpr double kLogRange = 700.0;
constexpr long long kTermRetention = 100000;

// Product accumulated as log-modulus plus unit phase, so near-cancelling
// subset sums with huge dynamic range stay representable.
struct LogProduct {
  double log_abs = 0.0;
  cplx phase{1.0};
  bool zero = false;

  void mul(cplx f) {
    const double a = std::abs(f);
    if (a == 0.0) {
      zero = true;
      return;
    }
    log_abs += std::log(a);
    phase *= f / a;
  }
  void div(cplx f) {
    const double a = std::abs(f);
    if (a == 0.0) {
      infinite = true;
      return;
    }
    log_abs -= std::log(a);
    phase /= f / a;
  }
  bool infinite = false;
};

struct LogTerm {
  double log_abs;
  cplx phase;
};

// Stable sum of log-form terms in a fixed order.
DeterminantResult sum_log_terms(const std::vector<LogTerm>& terms) {
  double lmax = -std::numeric_limits<double>::infinity();
  for (const LogTerm& t : terms) lmax = std::max(lmax, t.log_abs);
  if (!std::isfinite(lmax)) return DeterminantResult::from_value(cplx(0.0));
  cplx acc(0.0);
  for (const LogTerm& t : terms) acc += std::exp(t.log_abs - lmax) * t.phase;
  const double a = std::abs(acc);
  if (a == 0.0) return DeterminantResult::from_value(cplx(0.0));
  return DeterminantResult::from_log(lmax + std::log(a), acc / a);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Lexicographic unranking of the `rank`-th k-subset of {0..n-1}.
void unrank_combination(int n, int k, long long rank, std::vector<int>& out) {
  out.clear();
  int x = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const long long c = binomial(n - x - 1, k - i - 1);
      if (rank < c) break;
      rank -= c;
      ++x;
    }
    out.push_back(x);
    ++x;
  }
}

struct DaySetup {
  std::vector<cplx> tau;     // all numerator roots, epsilon roots last
  std::vector<cplx> delta;   // inner poles
  std::vector<cplx> gamma;   // outer poles
  cplx rho;
  int s = 0, p = 0, q = 0;
  double base_sign = 1.0;    // (-1)^{s-p}, negate_sign folded in
  // Per-root prefactors.
  std::vector<cplx> P_k;     // prod_m (tau_k - delta_m)
  std::vector<cplx> G_j;     // prod_l (gamma_l - tau_j)
  LogProduct W;              // prod_{l,m} (gamma_l - delta_m)^{-1}
};

DaySetup make_setup(const RationalSymbol& sym, double eps_value) {
  DaySetup st;
  st.tau = sym.numerator_roots;
  for (int j = 1; j <= sym.epsilon_roots; ++j) st.tau.push_back(eps_value * static_cast<double>(j));
  st.delta = sym.inner_poles;
  st.gamma = sym.outer_poles;
  st.rho = sym.rho;
  st.s = static_cast<int>(st.tau.size());
  st.p = static_cast<int>(st.delta.size());
  st.q = static_cast<int>(st.gamma.size());
  st.base_sign = (((st.s - st.p) % 2) ? -1.0 : 1.0) * (sym.negate_sign ? -1.0 : 1.0);

  st.P_k.resize(static_cast<std::size_t>(st.s));
  st.G_j.resize(static_cast<std::size_t>(st.s));
  for (int k = 0; k < st.s; ++k) {
    cplx pk(1.0), gj(1.0);
    for (const cplx& d : st.delta) pk *= (st.tau[static_cast<std::size_t>(k)] - d);
    for (const cplx& g : st.gamma) gj *= (g - st.tau[static_cast<std::size_t>(k)]);
    st.P_k[static_cast<std::size_t>(k)] = pk;
    st.G_j[static_cast<std::size_t>(k)] = gj;
  }
  for (const cplx& g : st.gamma)
    for (const cplx& d : st.delta) st.W.div(g - d);
  return st;
}

// Day's sum over subsets M of fixed size; `choose_from` restricts the free
// choice, `forced` lists indices always placed in M.
DeterminantResult day_sum(const DaySetup& st, const std::vector<int>& choose_from,
                          const std::vector<int>& forced, int free_size, int N,
                          bool retain_terms) {
  const int nfree = static_cast<int>(choose_from.size());
  const long long total = binomial(nfree, free_size);
  if (total <= 0) return DeterminantResult::from_value(cplx(0.0));

  struct Acc {
    std::vector<LogTerm> log_terms;
    std::vector<SubsetTerm> subset_terms;
    bool degenerate = false;
  };
  Acc init;

  std::function<void(std::int64_t, std::int64_t, Acc&)> body = [&](std::int64_t lo, std::int64_t hi,
                                                                   Acc& acc) {
    std::vector<int> pick;
    std::vector<int> M;
    std::vector<char> in_M(static_cast<std::size_t>(st.s), 0);
    for (std::int64_t rank = lo; rank < hi; ++rank) {
      unrank_combination(nfree, free_size, rank, pick);
      M.clear();
      std::fill(in_M.begin(), in_M.end(), 0);
      for (int f : forced) {
        M.push_back(f);
        in_M[static_cast<std::size_t>(f)] = 1;
      }
      for (int idx : pick) {
        M.push_back(choose_from[static_cast<std::size_t>(idx)]);
        in_M[static_cast<std::size_t>(choose_from[static_cast<std::size_t>(idx)])] = 1;
      }
      std::sort(M.begin(), M.end());

      LogProduct c = st.W;
      LogProduct r;
      r.mul(st.rho * st.base_sign);
      for (int k = 0; k < st.s && !c.zero; ++k) {
        if (in_M[static_cast<std::size_t>(k)]) {
          c.mul(st.G_j[static_cast<std::size_t>(k)]);
        } else {
          c.mul(st.P_k[static_cast<std::size_t>(k)]);
          r.mul(st.tau[static_cast<std::size_t>(k)]);
        }
      }
      if (!c.zero && !r.zero) {
        for (int k = 0; k < st.s; ++k) {
          if (in_M[static_cast<std::size_t>(k)]) continue;
          for (int j : M) c.div(st.tau[static_cast<std::size_t>(k)] - st.tau[static_cast<std::size_t>(j)]);
        }
      }
      // c = 0: an identity pad/pole pair fell on the wrong side of M.
      // r = 0: a vanished root in the complement kills r^N for N >= 1.
      if (c.zero || r.zero) continue;
      if (c.infinite) {
        acc.degenerate = true;
        continue;
      }

      LogTerm term{c.log_abs + static_cast<double>(N) * r.log_abs,
                   c.phase * std::pow(r.phase, static_cast<double>(N))};
      acc.log_terms.push_back(term);
      if (retain_terms) {
        SubsetTerm stm;
        stm.M = M;
        const double rc = std::exp(std::min(r.log_abs, kLogRange));
        const double cc = std::exp(std::min(c.log_abs, kLogRange));
        stm.r = rc * r.phase;
        stm.C = cc * c.phase;
        acc.subset_terms.push_back(std::move(stm));
      }
    }
  };
  std::function<void(Acc&, const Acc&)> combine = [](Acc& a, const Acc& b) {
    a.log_terms.insert(a.log_terms.end(), b.log_terms.begin(), b.log_terms.end());
    a.subset_terms.insert(a.subset_terms.end(), b.subset_terms.begin(), b.subset_terms.end());
    a.degenerate = a.degenerate || b.degenerate;
  };

  Acc acc = parallel_reduce<Acc>(total, init, body, combine);
  if (acc.degenerate)
    throw DegenerateRoots("coincident numerator roots split across M and its complement");
  DeterminantResult res = sum_log_terms(acc.log_terms);
  if (retain_terms) res.terms = std::move(acc.subset_terms);
  return res;
}

double root_scale(const RationalSymbol& sym) {
  double scale = 0.0;
  for (const cplx& t : sym.numerator_roots) scale = std::max(scale, std::abs(t));
  return scale > 0 ? scale : 1.0;
}

double min_root_modulus(const RationalSymbol& sym) {
  double m = 1e30;
  for (const cplx& t : sym.numerator_roots) m = std::min(m, std::abs(t));
  return m == 1e30 ? 1.0 : m;
}

DeterminantResult trivial_det(const RationalSymbol& sym, int N) {
  if (sym.trivial_exponent != 0 || std::abs(sym.rho) == 0.0)
    return DeterminantResult::from_value(cplx(0.0));
  LogProduct v;
  v.mul(sym.rho * (sym.negate_sign ? -1.0 : 1.0));
  return DeterminantResult::from_log(static_cast<double>(N) * v.log_abs,
                                     std::pow(v.phase, static_cast<double>(N)));
}

}  // namespace

DeterminantResult DeterminantResult::from_value(cplx v) {
  DeterminantResult r;
  r.value = v;
  const double a = std::abs(v);
  if (a > 0) {
    r.log_abs = std::log(a);
    r.phase = v / a;
  }
  return r;
}

DeterminantResult DeterminantResult::from_log(double log_abs, cplx phase) {
  DeterminantResult r;
  r.log_abs = log_abs;
  r.phase = phase;
  if (std::abs(log_abs) < kLogRange) {
    r.value = std::exp(log_abs) * phase;
  } else {
    r.out_of_range = true;
    r.value = log_abs > 0 ? phase * std::numeric_limits<double>::infinity() : cplx(0.0);
  }
  return r;
}

long long day_term_count(const RationalSymbol& sym) {
  if (sym.trivial) return 1;
  if (sym.s() > 44) throw SubsetExplosion("symbol exceeds the subset enumeration cap");
  return binomial(sym.s(), sym.p());
}

int symbol_N_alpha(const RationalSymbol& sym) { return std::max(sym.epsilon_roots, 1); }

DeterminantResult day_determinant(const RationalSymbol& sym, int N) {
  if (N < 1) throw UsageError("day_determinant requires N >= 1");
  if (sym.trivial) return trivial_det(sym, N);
  if (sym.p() < 1 || sym.q() < 1 || sym.s() < sym.p() + sym.q())
    throw UsageError("symbol is not in Day canonical form (pad poles first)");

  const double eps = 1e-5 * min_root_modulus(sym);
  DaySetup st = make_setup(sym, eps);

  // Pairwise distinct numerator roots, excluding identity pad/pole pairs
  // whose subsets vanish exactly.
  const double sep_tol = 1e-9 * root_scale(sym);
  for (int i = 0; i < st.s; ++i)
    for (int j = i + 1; j < st.s; ++j)
      if (std::abs(st.tau[static_cast<std::size_t>(i)] - st.tau[static_cast<std::size_t>(j)]) < sep_tol)
        throw DegenerateRoots("numerator roots closer than 1e-9 * scale; use day_with_limit");

  const long long total = binomial(st.s, st.p);
  std::vector<int> all(static_cast<std::size_t>(st.s));
  for (int i = 0; i < st.s; ++i) all[static_cast<std::size_t>(i)] = i;
  return day_sum(st, all, {}, st.p, N, total <= kTermRetention);
}

DeterminantResult day_with_limit(const RationalSymbol& sym, int N) {
  if (N < 1) throw UsageError("day_with_limit requires N >= 1");
  if (sym.trivial) return trivial_det(sym, N);
  if (sym.p() < 1 || sym.q() < 1 || sym.s() < sym.p() + sym.q())
    throw UsageError("symbol is not in Day canonical form (pad poles first)");

  if (N >= symbol_N_alpha(sym)) {
    // Exact reduced sum: every epsilon root sits in M at value zero; subsets
    // with an epsilon root in the complement are suppressed (their term
    // carries a positive power of epsilon once N >= N_alpha).
    DaySetup st = make_setup(sym, 0.0);
    const int n_exact = static_cast<int>(sym.numerator_roots.size());
    const int free_size = st.p - sym.epsilon_roots;
    if (free_size < 0) return DeterminantResult::from_value(cplx(0.0));
    std::vector<int> forced, choose_from;
    for (int i = n_exact; i < st.s; ++i) forced.push_back(i);
    for (int i = 0; i < n_exact; ++i) choose_from.push_back(i);
    const long long total = binomial(n_exact, free_size);
    return day_sum(st, choose_from, forced, free_size, N, total <= kTermRetention);
  }

  // Below N_alpha: evaluate at eps, eps/2, eps/4 and extrapolate; the
  // determinant is polynomial in eps, so one Richardson level kills the
  // linear term and the two extrapolants estimate the remainder.
  auto eval_at = [&](double scale) {
    const double eps = scale * 1e-5 * min_root_modulus(sym);
    DaySetup st = make_setup(sym, eps);
    std::vector<int> all(static_cast<std::size_t>(st.s));
    for (int i = 0; i < st.s; ++i) all[static_cast<std::size_t>(i)] = i;
    return day_sum(st, all, {}, st.p, N, false);
  };
  const DeterminantResult d1 = eval_at(1.0);
  const DeterminantResult d2 = eval_at(0.5);
  const DeterminantResult d4 = eval_at(0.25);
  const cplx linear = 2.0 * d4.value - d2.value;
  const cplx quad = (8.0 * d4.value - 6.0 * d2.value + d1.value) / 3.0;
  // The quadratic extrapolant is exact through O(eps^2); its gap to the
  // linear one is the residual estimate. Exact zeros extrapolate to rounding
  // noise, hence the magnitude-scaled absolute floor.
  const double scale = std::max({std::abs(d1.value), std::abs(d2.value), 1.0});
  if (std::abs(quad - linear) > 1e-6 * std::max(std::abs(quad), std::abs(d1.value)) + 1e-10 * scale)
    throw ExtrapolationUnstable("epsilon extrapolation did not stabilize below N_alpha");
  return DeterminantResult::from_value(quad);
}

DeterminantResult numeric_toeplitz_det(const std::function<cplx(int)>& provider, int N) {
  if (N < 1) throw UsageError("numeric_toeplitz_det requires N >= 1");
  Eigen::MatrixXcd T(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) T(i, j) = provider(i - j);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(T);
  const Eigen::MatrixXcd& u = lu.matrixLU();
  double log_abs = 0.0;
  cplx phase = static_cast<double>(lu.permutationP().determinant());
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < N; ++i) {
    const cplx d = u(i, i);
    const double a = std::abs(d);
    dmax = std::max(dmax, a);
    dmin = std::min(dmin, a);
    if (a == 0.0) {
      DeterminantResult r = DeterminantResult::from_value(cplx(0.0));
      r.condition_estimate = std::numeric_limits<double>::infinity();
      return r;
    }
    log_abs += std::log(a);
    phase *= d / a;
  }
  DeterminantResult r = DeterminantResult::from_log(log_abs, phase);
  r.condition_estimate = dmax / dmin;
  r.condition_warning = r.condition_estimate > 1e12;
  return r;
}

DeterminantResult numeric_toeplitz_det(const FourierSlice& coeffs, int N) {
  return numeric_toeplitz_det([&coeffs](int n) { return coeffs.at(n); }, N);
}

DeterminantResult numeric_symbol_det(const RationalSymbol& sym, int N) {
  const FourierSlice slice =
      symbol_fourier_fft([&sym](cplx z) { return sym.eval(z); }, -(N - 1), N - 1);
  return numeric_toeplitz_det(slice, N);
}

Eigen::MatrixXcd block_toeplitz_matrix(const BlockSampler& sampler, int N) {
  const int needed = N - 1;
  std::size_t M = 1u << 12;
  while (static_cast<int>(M / 4) <= needed) M <<= 1;

  std::vector<std::vector<cplx>> entry(4, std::vector<cplx>(M));
  for (std::size_t j = 0; j < M; ++j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    const Eigen::Matrix2cd phi = sampler(cplx(std::cos(th), std::sin(th)));
    entry[0][j] = phi(0, 0);
    entry[1][j] = phi(0, 1);
    entry[2][j] = phi(1, 0);
    entry[3][j] = phi(1, 1);
  }
  for (auto& e : entry) fft_radix2(e);

  auto coeff = [&](int n, int which) {
    const std::size_t idx =
        static_cast<std::size_t>((n % static_cast<int>(M) + static_cast<int>(M)) % static_cast<int>(M));
    return entry[static_cast<std::size_t>(which)][idx] / static_cast<double>(M);
  };

  Eigen::MatrixXcd T(2 * N, 2 * N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int n = i - j;
      T(2 * i, 2 * j) = coeff(n, 0);
      T(2 * i, 2 * j + 1) = coeff(n, 1);
      T(2 * i + 1, 2 * j) = coeff(n, 2);
      T(2 * i + 1, 2 * j + 1) = coeff(n, 3);
    }
  }
  return T;
}

std::vector<cplx> block_toeplitz_eigen(const BlockSampler& sampler, int N) {
  if (N < 1) throw UsageError("block_toeplitz_eigen requires N >= 1");
  const Eigen::MatrixXcd T = block_toeplitz_matrix(sampler, N);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(T, false);
  std::vector<cplx> ev(static_cast<std::size_t>(2 * N));
  for (int i = 0; i < 2 * N; ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return ev;
}

DeterminantResult block_toeplitz_det(const BlockSampler& sampler, int N) {
  const Eigen::MatrixXcd T = block_toeplitz_matrix(sampler, N);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(T);
  const Eigen::MatrixXcd& u = lu.matrixLU();
  double log_abs = 0.0;
  cplx phase = static_cast<double>(lu.permutationP().determinant());
  for (int i = 0; i < 2 * N; ++i) {
    const cplx d = u(i, i);
    const double a = std::abs(d);
    if (a == 0.0) return DeterminantResult::from_value(cplx(0.0));
    log_abs += std::log(a);
    phase *= d / a;
  }
  return DeterminantResult::from_log(log_abs, phase);
}

}  // namespace toeplitz_chains
