#include "toeplitz_chains/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "toeplitz_chains/fft.hpp"
#include "toeplitz_chains/poly.hpp"

namespace toeplitz_chains {
namespace {

// Normalized two-point symbol
//   t~(z) = prod (z - z_j)(z - Z_k) / prod (1 - z zbar_j)(1 - z Zbar_k),
// modulus one on the unit circle.
cplx t_tilde_eval(const ModelSpec& m, cplx z) {
  cplx num(1.0), den(1.0);
  for (const cplx& zj : m.zeros_inside) {
    num *= (z - zj);
    den *= (1.0 - z * std::conj(zj));
  }
  for (const cplx& Zk : m.zeros_outside) {
    num *= (z - Zk);
    den *= (1.0 - z * std::conj(Zk));
  }
  return num / den;
}

// Pad point selection: a fixed list of candidates, first one sufficiently far
// from every existing root/pole wins.
cplx pick_pad(const std::vector<cplx>& candidates, const RationalSymbol& sym) {
  for (const cplx& c : candidates) {
    double dist = 1e30;
    for (const cplx& t : sym.numerator_roots) dist = std::min(dist, std::abs(c - t));
    for (const cplx& d : sym.inner_poles) dist = std::min(dist, std::abs(c - d));
    for (const cplx& g : sym.outer_poles) dist = std::min(dist, std::abs(c - g));
    if (sym.epsilon_roots > 0) dist = std::min(dist, std::abs(c));
    if (dist > 1e-3) return c;
  }
  return candidates.back();
}

void pad_missing_poles(RationalSymbol& sym) {
  if (sym.inner_poles.empty()) {
    const cplx c = pick_pad({cplx(0.0, 0.0), cplx(0.31, -0.23), cplx(-0.27, 0.33), cplx(0.153, 0.41)}, sym);
    sym.inner_poles.push_back(c);
    sym.numerator_roots.push_back(c);
    sym.inner_pad_roots.push_back(static_cast<int>(sym.numerator_roots.size()) - 1);
  }
  if (sym.outer_poles.empty()) {
    const cplx g = pick_pad({cplx(3.7, 1.3), cplx(-2.9, 2.1), cplx(4.3, -0.7)}, sym);
    sym.outer_poles.push_back(g);
    sym.numerator_roots.push_back(g);
    sym.outer_pad_roots.push_back(static_cast<int>(sym.numerator_roots.size()) - 1);
    sym.rho *= -1.0 / g;  // (1 - z/g) = (-1/g)(z - g)
  }
}

RationalSymbol string_symbol_impl(const ModelSpec& m, int alpha, bool record_sign) {
  if (m.multiplicity != 2)
    throw OddMultiplicity("string symbols require a multiplicity-2 model");
  RationalSymbol sym;
  if (record_sign && m.is_bdi() && m.sigma() < 0) sym.negate_sign = true;

  const int nz = m.n_z(), nZ = m.n_Z();
  const int e = nz + nZ - m.n_P - alpha;
  if (nz == 0 && nZ == 0) {
    sym.trivial = true;
    sym.trivial_exponent = -m.n_P - alpha;
    return sym;
  }

  if (e >= 0) {
    // t(z) form: numerator roots are the zeros, poles at 1/conj(zeros).
    for (const cplx& zj : m.zeros_inside) sym.numerator_roots.push_back(zj);
    for (const cplx& Zk : m.zeros_outside) sym.numerator_roots.push_back(Zk);
    for (const cplx& zj : m.zeros_inside) sym.outer_poles.push_back(1.0 / std::conj(zj));
    for (const cplx& Zk : m.zeros_outside) sym.inner_poles.push_back(1.0 / std::conj(Zk));
    sym.epsilon_roots = e;
    cplx rho(1.0);
    for (const cplx& Zk : m.zeros_outside) rho *= -std::conj(Zk);
    sym.rho = 1.0 / rho;
  } else {
    // t(1/z) form: numerator roots are the inverse zeros.
    for (const cplx& zj : m.zeros_inside) sym.numerator_roots.push_back(1.0 / zj);
    for (const cplx& Zk : m.zeros_outside) sym.numerator_roots.push_back(1.0 / Zk);
    for (const cplx& zj : m.zeros_inside) sym.inner_poles.push_back(std::conj(zj));
    for (const cplx& Zk : m.zeros_outside) sym.outer_poles.push_back(std::conj(Zk));
    sym.epsilon_roots = -e;
    cplx rho(1.0);
    for (const cplx& zj : m.zeros_inside) rho *= -zj;
    for (const cplx& Zk : m.zeros_outside) rho *= Zk / std::conj(Zk);
    sym.rho = rho;
  }
  pad_missing_poles(sym);
  return sym;
}

}  // namespace

cplx RationalSymbol::eval(cplx z) const {
  if (trivial) {
    cplx v = rho * std::pow(z, trivial_exponent);
    return negate_sign ? -v : v;
  }
  cplx num = rho * std::pow(z, epsilon_roots);
  for (const cplx& t : numerator_roots) num *= (z - t);
  cplx den(1.0);
  for (const cplx& g : outer_poles) den *= (1.0 - z / g);
  for (const cplx& d : inner_poles) den *= (z - d);
  const cplx v = num / den;
  return negate_sign ? -v : v;
}

RationalSymbol bdi_string_symbol(const ModelSpec& m, int alpha) {
  if (!m.is_bdi()) throw SpecError("bdi_string_symbol requires a BDI model");
  return string_symbol_impl(m, alpha, true);
}

RationalSymbol aiii_string_symbol(const ModelSpec& m, int alpha) {
  return string_symbol_impl(m, alpha, false);
}

RationalSymbol efp_symbol(const ModelSpec& m) {
  if (!m.is_bdi()) throw SpecError("emptiness formation is defined for BDI models here");
  if (m.multiplicity != 2) throw OddMultiplicity("EFP symbol requires a multiplicity-2 model");

  RationalSymbol sym;
  const int nz = m.n_z(), nZ = m.n_Z();
  const double sigma = m.sigma();
  if (nz == 0 && nZ == 0) {
    // t(z) = (1 - sigma z^{-n_P}) / 2.
    if (m.n_P == 0) {
      sym.trivial = true;
      sym.rho = 0.5 * (1.0 - sigma);
      return sym;
    }
    // (z^k - sigma) has k distinct unit-circle roots; exact Day form.
    const int k = std::abs(m.n_P);
    for (int j = 0; j < k; ++j) {
      const double th = (sigma > 0 ? 2.0 * kPi * j : kPi * (2 * j + 1)) / k;
      sym.numerator_roots.push_back(cplx(std::cos(th), std::sin(th)));
    }
    if (m.n_P > 0) {
      sym.rho = 0.5;
      for (int j = 0; j < k; ++j) sym.inner_poles.push_back(cplx(0.0));
    } else {
      sym.rho = -0.5 * sigma;
    }
    pad_missing_poles(sym);
    return sym;
  }

  const int e0 = nz + nZ - m.n_P;
  // Denominator prod (1 - z z_j) prod (z - 1/Z_k), plus z^{|e0|} when the
  // pole degree exceeds the zero count.
  std::vector<cplx> term1{cplx(1.0)}, term2{cplx(1.0)};
  for (const cplx& zj : m.zeros_inside) term1 = poly_mul(term1, {cplx(1.0), -zj});
  for (const cplx& Zk : m.zeros_outside) term1 = poly_mul(term1, {-1.0 / Zk, cplx(1.0)});
  for (const cplx& zj : m.zeros_inside) term2 = poly_mul(term2, {-zj, cplx(1.0)});
  for (const cplx& Zk : m.zeros_outside) term2 = poly_mul(term2, {cplx(1.0), -1.0 / Zk});

  std::vector<cplx> num;
  if (e0 >= 0) {
    num.assign(term1.size() + static_cast<std::size_t>(e0), cplx(0));
    num.resize(std::max(num.size(), term2.size() + static_cast<std::size_t>(e0)), cplx(0));
    for (std::size_t k = 0; k < term1.size(); ++k) num[k] += term1[k];
    for (std::size_t k = 0; k < term2.size(); ++k) num[k + static_cast<std::size_t>(e0)] -= sigma * term2[k];
  } else {
    const std::size_t shift = static_cast<std::size_t>(-e0);
    num.assign(term1.size() + shift, cplx(0));
    num.resize(std::max(num.size(), term2.size()), cplx(0));
    for (std::size_t k = 0; k < term1.size(); ++k) num[k + shift] += term1[k];
    for (std::size_t k = 0; k < term2.size(); ++k) num[k] -= sigma * term2[k];
    for (int j = 0; j < -e0; ++j) sym.inner_poles.push_back(cplx(0.0));
  }
  while (!num.empty() && std::abs(num.back()) < 1e-13) num.pop_back();
  if (num.size() <= 1) {
    // f/|f| identically sigma: P(N) collapses to the trivial cases.
    sym.trivial = true;
    sym.rho = poly_eval(num, cplx(0)) * 0.5;
    return sym;
  }

  sym.rho = 0.5 * num.back();
  sym.numerator_roots = poly_roots(num);
  for (const cplx& zj : m.zeros_inside) sym.outer_poles.push_back(1.0 / zj);
  for (const cplx& Zk : m.zeros_outside) sym.inner_poles.push_back(1.0 / Zk);

  if (sym.s() < sym.p() + sym.q())
    throw DegenerateRoots("EFP numerator degree collapsed; perturb the model");
  pad_missing_poles(sym);
  return sym;
}

namespace {

FourierSlice residue_slice(const ModelSpec& m, int n_lo, int n_hi, int sign_adjust) {
  const int nz = m.n_z(), nZ = m.n_Z();
  std::vector<cplx> zb, Zb;
  for (const cplx& z : m.zeros_inside) zb.push_back(std::conj(z));
  for (const cplx& Z : m.zeros_outside) Zb.push_back(std::conj(Z));

  const double front_sign = ((nz + nZ) % 2 == 0) ? 1.0 : -1.0;

  std::vector<cplx> A(zb.size()), B(Zb.size());
  for (int k = 0; k < nz; ++k) {
    cplx num(1.0), den(1.0);
    for (const cplx& zj : m.zeros_inside) num *= (1.0 - zj * zb[static_cast<std::size_t>(k)]);
    for (const cplx& Zj : m.zeros_outside) num *= (1.0 - Zj * zb[static_cast<std::size_t>(k)]);
    for (int j = 0; j < nz; ++j)
      if (j != k) den *= (zb[static_cast<std::size_t>(j)] - zb[static_cast<std::size_t>(k)]);
    for (int j = 0; j < nZ; ++j) den *= (Zb[static_cast<std::size_t>(j)] - zb[static_cast<std::size_t>(k)]);
    A[static_cast<std::size_t>(k)] = num / den;
  }
  for (int k = 0; k < nZ; ++k) {
    cplx num(1.0), den(1.0);
    for (const cplx& zj : m.zeros_inside) num *= (1.0 - zj * Zb[static_cast<std::size_t>(k)]);
    for (const cplx& Zj : m.zeros_outside) num *= (1.0 - Zj * Zb[static_cast<std::size_t>(k)]);
    for (int j = 0; j < nz; ++j) den *= (zb[static_cast<std::size_t>(j)] - Zb[static_cast<std::size_t>(k)]);
    for (int j = 0; j < nZ; ++j)
      if (j != k) den *= (Zb[static_cast<std::size_t>(j)] - Zb[static_cast<std::size_t>(k)]);
    B[static_cast<std::size_t>(k)] = num / den;
  }

  cplx t0(0.0);
  {
    cplx boundary(1.0);
    for (const cplx& zj : m.zeros_inside) boundary *= -zj;
    for (const cplx& Zk : m.zeros_outside) boundary *= -Zk;
    for (int k = 0; k < nZ; ++k) t0 += B[static_cast<std::size_t>(k)] / Zb[static_cast<std::size_t>(k)];
    t0 = front_sign * t0 + boundary;
  }

  FourierSlice slice;
  slice.offset = n_lo;
  slice.method = FourierMethod::residue;
  slice.values.resize(static_cast<std::size_t>(n_hi - n_lo) + 1, cplx(0));
  for (int n = n_lo; n <= n_hi; ++n) {
    cplx v(0.0);
    if (n > 0) {
      for (int k = 0; k < nz; ++k)
        v += A[static_cast<std::size_t>(k)] * std::pow(zb[static_cast<std::size_t>(k)], n - 1);
      v *= -front_sign;
    } else if (n < 0) {
      for (int k = 0; k < nZ; ++k)
        v += B[static_cast<std::size_t>(k)] * std::pow(Zb[static_cast<std::size_t>(k)], n - 1);
      v *= front_sign;
    } else {
      v = t0;
    }
    slice.values[static_cast<std::size_t>(n - n_lo)] = static_cast<double>(sign_adjust) * v;
  }
  return slice;
}

FourierSlice fft_slice(const std::function<cplx(cplx)>& f, int n_lo, int n_hi) {
  const int needed = std::max(std::abs(n_lo), std::abs(n_hi));
  std::size_t M = 1u << 14;
  while (static_cast<int>(M / 4) <= needed) M <<= 1;

  auto compute = [&](std::size_t size) {
    std::vector<cplx> samples(size);
    for (std::size_t j = 0; j < size; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(size);
      samples[j] = f(cplx(std::cos(th), std::sin(th)));
    }
    fft_radix2(samples);
    FourierSlice s;
    s.offset = n_lo;
    s.method = FourierMethod::fft;
    s.values.resize(static_cast<std::size_t>(n_hi - n_lo) + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
      const std::size_t idx = static_cast<std::size_t>((n % static_cast<int>(size) + static_cast<int>(size)) % static_cast<int>(size));
      s.values[static_cast<std::size_t>(n - n_lo)] = samples[idx] / static_cast<double>(size);
    }
    return s;
  };

  FourierSlice a = compute(M);
  for (int rounds = 0; rounds < 6; ++rounds) {
    FourierSlice b = compute(M <<= 1);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
      diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    a = b;
    if (diff < 1e-12) break;
  }
  return a;
}

// The closed residue formulas carry a sign convention that is fixed once
// against the FFT oracle on a reference model.
int residue_sign_adjust() {
  static std::once_flag flag;
  static int sign = 1;
  std::call_once(flag, []() {
    ModelSpec ref;
    ref.zeros_inside = {cplx(0.5, 0.0)};
    ref = validate_model(ref);
    const FourierSlice res = residue_slice(ref, 1, 1, 1);
    const FourierSlice fft = fft_slice([&](cplx z) { return t_tilde_eval(ref, z); }, 1, 1);
    if (std::abs(res.values[0] - fft.values[0]) > std::abs(res.values[0] + fft.values[0])) sign = -1;
  });
  return sign;
}

double min_pole_separation(const ModelSpec& m) {
  std::vector<cplx> poles;
  for (const cplx& z : m.zeros_inside) poles.push_back(1.0 / std::conj(z));
  for (const cplx& Z : m.zeros_outside) poles.push_back(1.0 / std::conj(Z));
  double sep = 1e30;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      sep = std::min(sep, std::abs(poles[i] - poles[j]));
  return sep;
}

}  // namespace

FourierSlice fourier_coefficients_residue(const ModelSpec& m, int n_lo, int n_hi) {
  return residue_slice(m, n_lo, n_hi, residue_sign_adjust());
}

FourierSlice fourier_coefficients_fft(const ModelSpec& m, int n_lo, int n_hi) {
  return fft_slice([&](cplx z) { return t_tilde_eval(m, z); }, n_lo, n_hi);
}

FourierSlice fourier_coefficients(const ModelSpec& m, int n_lo, int n_hi) {
  if (n_lo > n_hi) throw UsageError("fourier_coefficients: n_lo > n_hi");
  if (m.n_z() + m.n_Z() == 0) {
    FourierSlice s;
    s.offset = n_lo;
    s.method = FourierMethod::residue;
    s.values.resize(static_cast<std::size_t>(n_hi - n_lo) + 1, cplx(0));
    if (n_lo <= 0 && 0 <= n_hi) s.values[static_cast<std::size_t>(-n_lo)] = cplx(1.0);
    return s;
  }
  if (min_pole_separation(m) > 1e-6) return fourier_coefficients_residue(m, n_lo, n_hi);
  return fourier_coefficients_fft(m, n_lo, n_hi);
}

FourierSlice symbol_fourier_fft(const std::function<cplx(cplx)>& symbol, int n_lo, int n_hi) {
  return fft_slice(symbol, n_lo, n_hi);
}

BlockSampler block_symbol_sampler(const ModelSpec& m, cplx lambda) {
  if (m.multiplicity != 2 && m.n_z() + m.n_Z() > 0)
    throw OddMultiplicity("block symbol requires a multiplicity-2 model");
  const int e = m.n_z() + m.n_Z() - m.n_P;
  const ModelSpec model = m;
  if (m.is_bdi()) {
    const double sigma = m.sigma();
    return [model, lambda, e, sigma](cplx z) {
      const cplx s = sigma * std::pow(z, e) * t_tilde_eval(model, z);
      Eigen::Matrix2cd phi;
      phi << cplx(0, 1) * lambda, s, -1.0 / s, cplx(0, 1) * lambda;
      return phi;
    };
  }
  return [model, lambda, e](cplx z) {
    const cplx s = std::pow(z, e) * t_tilde_eval(model, z);
    Eigen::Matrix2cd phi;
    phi << lambda, -s, -1.0 / s, lambda;
    return phi;
  };
}

}  // namespace toeplitz_chains
