#include "toeplitz_chains/smith.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "toeplitz_chains/poly.hpp"

namespace toeplitz_chains {
namespace {

Poly2 zpoly(const std::vector<cplx>& roots) {
  return Poly2::from_z_poly(poly_from_roots(roots));
}

const cplx kI(0.0, 1.0);

// f = z^-1 (z-b)^2 with real |b| < 1.
SmithFixture fixture_b_quartic(cplx b) {
  SmithFixture fix;
  fix.family = FixtureFamily::b_quartic_inside;
  fix.param_b = b;

  ModelSpec m;
  m.zeros_inside = {b};
  m.n_P = 1;
  fix.model = validate_model(m);

  const Poly2 Z = Poly2::z(), L = Poly2::lam();
  const cplx ib = 1.0 / b;

  fix.tau = {b, ib};
  fix.g_tilde = {-b, 1.0};        // z - b
  fix.h_tilde = {1.0, -b};        // 1 - b z
  fix.det_ratio_prefactor = b * b;

  fix.a_entries[0] = kI * (-b) * L * zpoly({b, ib});
  fix.a_entries[1] = zpoly({b, b});
  fix.a_entries[2] = cplx(-1.0) * b * b * zpoly({ib, ib});
  fix.a_entries[3] = fix.a_entries[0];
  fix.smith_diag = zpoly({b, b, ib, ib});

  const cplx b2m1 = b * b - 1.0;
  fix.y_full[0] = kI * b * (b * b - b * Z * (L * L - 1.0) + L * L - 2.0);
  fix.y_full[1] = b2m1 * L;
  fix.y_full[2] = (1.0 / b2m1) * L * (b * Z - 1.0) * (b * L * L * (b - Z) + b * Z - 1.0);
  fix.y_full[3] = kI * L * L * (b - Z);
  fix.y21 = fix.y_full[2];
  fix.y22 = fix.y_full[3];

  // B = lambda^2 (b z - 1)^2 + b (b - z)(b (b + z) - 2)
  const Poly2 B = L * L * (b * Z - 1.0) * (b * Z - 1.0) + b * (b - Z) * (b * (b + Z) - 2.0);
  fix.has_w = true;
  fix.w_num[0] = Poly2::constant(-1.0);
  fix.w_den[0] = (b2m1 * b2m1 * b2m1) * L;
  fix.w_num[1] = cplx(-1.0) * kI * (b - Z) * B;
  fix.w_den[1] = (b * b * b2m1 * b2m1) * L * L * (L * L - 1.0);
  fix.w_num[2] = Poly2::constant(-kI * b);
  fix.w_den[2] = Poly2::constant(b2m1 * b2m1 * b2m1);
  fix.w_num[3] = cplx(-1.0) * (Poly2::constant(b2m1 * b2m1 * b2m1) - b * (b - Z) * B);
  fix.w_den[3] = (b * b * b2m1 * b2m1) * L * (L * L - 1.0);
  return fix;
}

// f = z^-2 (z-a)^2 (z-b)^2 with |a| < 1 and either |b| < 1 or |b| > 1.
SmithFixture fixture_ab_sextic(cplx a, cplx b) {
  SmithFixture fix;
  fix.family = FixtureFamily::ab_sextic;
  fix.param_a = a;
  fix.param_b = b;

  const bool b_outside = std::abs(b) > 1.0;
  ModelSpec m;
  m.n_P = 2;
  m.zeros_inside = {a};
  (b_outside ? m.zeros_outside : m.zeros_inside).push_back(b);
  fix.model = validate_model(m);

  const Poly2 Z = Poly2::z(), L = Poly2::lam();
  const cplx ia = 1.0 / a, ib = 1.0 / b;

  fix.tau = {a, ia, b, ib};
  if (!b_outside) {
    fix.g_tilde = poly_from_roots<cplx>({a, b});
    fix.h_tilde = poly_mul<cplx>({1.0, -a}, {1.0, -b});
    fix.det_ratio_prefactor = a * a * b * b;
  } else {
    fix.g_tilde = poly_from_roots<cplx>({a, ib});
    fix.h_tilde = poly_mul<cplx>({1.0, -a}, {1.0, -ib});
    fix.det_ratio_prefactor = a * a / (b * b);
  }

  // Matrix polynomial of the both-inside case; the mixed case divides it by
  // b^2 and scales w back up, leaving y unchanged.
  const cplx scale = b_outside ? 1.0 / (b * b) : cplx(1.0);
  fix.a_entries[0] = scale * kI * (a * b) * L * zpoly({a, ia, b, ib});
  fix.a_entries[1] = scale * zpoly({a, a, b, b});
  fix.a_entries[2] = scale * cplx(-1.0) * (a * a * b * b) * zpoly({ia, ia, ib, ib});
  fix.a_entries[3] = fix.a_entries[0];
  fix.smith_diag = zpoly({a, a, ia, ia, b, b, ib, ib});

  const cplx a2 = a * a, b2 = b * b, ab = a * b;
  const cplx a2m1 = a2 - 1.0, b2m1 = b2 - 1.0, abm1 = ab - 1.0;
  const cplx Kf = a2 * b2 - a2 - ab - b2;  // a^2(b^2-1) - ab - b^2

  fix.y_full[0] = cplx(-1.0) * b * a2 * (b + Z) + a2 + a * b * (1.0 - b * Z) + b2;
  fix.y_full[1] = kI * L * (a2 - Z * (a + b) + ab + b2 - 1.0);

  const cplx Pfac = a * a2m1 * b * b2m1 * (a + b) * abm1 * abm1 * Kf;
  const cplx Lc = a2 * b2 * (a2 + ab + b2 - 1.0);
  const cplx Ld = -a2 * a2 * b2 - a2 * b2 * b2 - a2 * a * b + a2 - a * b2 * b + ab + b2 - 1.0;
  const Poly2 Lpoly = Lc * L * L + Ld;  // shared lambda-quadratic factor

  const Poly2 inner = a2 * b2 + a2 * b * Z - a2 + ab * (b * Z - 1.0) - b2;
  const cplx c2 = a2m1 * a2m1 * b2m1 * b2m1 * abm1 * abm1;
  const Poly2 B1 =
      (1.0 - L * L) * (a - Z) * (a - Z) * (b - Z) * (b - Z) * inner * inner - Poly2::constant(c2);
  fix.y_full[2] = Pfac * (a * Z - 1.0) * (b * Z - 1.0) * Lpoly * B1;

  const Poly2 sfac = a2 - Z * (a + b) + ab + b2 - 1.0;
  const Poly2 tfac = a2 * (b * (b + Z) - 1.0) + ab * (b * Z - 1.0) - b2;
  const Poly2 B2 = Poly2::constant(c2) -
                   (L * L - 1.0) * (a - Z) * (a * Z - 1.0) * (b - Z) * (b * Z - 1.0) * sfac * tfac;
  fix.y_full[3] =
      cplx(-1.0) * kI * a * a2m1 * b * b2m1 * (a + b) * abm1 * abm1 * Kf * L * (a - Z) * (b - Z) * Lpoly * B2;

  fix.y21 = fix.y_full[2];
  fix.y22 = fix.y_full[3];

  // w(z, lambda); the shared denominator W is lambda-only.
  const cplx wscale = b_outside ? b * b : cplx(1.0);
  const Poly2 Wden = (a2 * a * std::pow(a2m1, 4) * b2 * b * std::pow(b2m1, 4) * (a + b) *
                      std::pow(abm1, 5) * (-Kf)) *
                     L * (L * L - 1.0) * Lpoly;

  const Poly2 w11b =
      a2 * a * (b * (-2.0 * b2 + Z * Z + 2.0) + L * L * (b - Z) * (b * (b + Z) - 1.0) - Z) +
      (a2 + ab) * (b2 * ((Z * Z + 1.0) * (Poly2::constant(1.0) - L * L) + 1.0) +
                   b * (L * L - 1.0) * Z * (Z * Z + 2.0) - L * L * Z * Z + Z * Z - 1.0) +
      b2 * ((L * L - 1.0) * Z * (b - Z) - 1.0) + 1.0;
  fix.has_w = true;
  fix.w_num[0] = wscale * cplx(-1.0) * kI * sfac * w11b;
  fix.w_den[0] = (std::pow(a2m1, 3) * std::pow(b2m1, 3) * std::pow(abm1, 3)) * L;
  fix.w_num[1] = wscale * cplx(-1.0) * kI * (a - Z) * (b - Z) *
                 (L * L * (a * Z - 1.0) * (b * Z - 1.0) * sfac + (a - Z) * (b - Z) * tfac);
  fix.w_den[1] = Wden;
  fix.w_num[2] = wscale * fix.y_full[0];
  fix.w_den[2] = Poly2::constant(a2m1 * a2m1 * b2m1 * b2m1 * abm1 * abm1);
  fix.w_num[3] = wscale * cplx(-1.0) * (a * Z - 1.0) * (b * Z - 1.0) * (a2m1 * b2m1 * abm1) * L;
  fix.w_den[3] = Wden;
  return fix;
}

// AIII f = z^-1 (z-b)^2, complex |b| < 1; the printed Smith data has no w.
SmithFixture fixture_aiii_quartic(cplx b) {
  SmithFixture fix;
  fix.family = FixtureFamily::aiii_b_quartic;
  fix.param_b = b;

  ModelSpec m;
  m.cls = SymmetryClass::AIII;
  m.zeros_inside = {b};
  m.n_P = 1;
  fix.model = validate_model(m);

  const Poly2 Z = Poly2::z(), L = Poly2::lam();
  const cplx bb = std::conj(b);
  const cplx ibb = 1.0 / bb;
  const double m2 = std::norm(b);  // |b|^2
  const double m4 = m2 * m2;

  fix.tau = {b, ibb};
  fix.g_tilde = {-b, 1.0};
  fix.h_tilde = {1.0, -bb};
  fix.det_ratio_prefactor = bb * bb;

  fix.a_entries[0] = (-bb) * L * zpoly({b, ibb});
  fix.a_entries[1] = cplx(-1.0) * zpoly({b, b});
  fix.a_entries[2] = cplx(-1.0) * (bb * bb) * zpoly({ibb, ibb});
  fix.a_entries[3] = fix.a_entries[0];
  fix.smith_diag = zpoly({b, b, ibb, ibb});

  fix.y_full[0] = (L * L - 2.0) * m2 + 1.0;
  fix.y_full[1] = (-1.0 / bb) * L * fix.y_full[0];
  fix.y_full[2] =
      (m2 - 1.0) * (bb * ((1.0 - L * L) * Z * (Poly2::constant(m4) - bb * (2.0 * b - Z) * (Z * bb - 1.0)) -
                          2.0 * b) -
                    (std::pow(m2 - 1.0, 2) * bb) * Z + L * L * m4 + 1.0);
  fix.y_full[3] = (1.0 / bb) * L * (m2 - 1.0) *
                  (m4 * (bb * (L * L * Z - b) - L * L + 1.0) + 2.0 * m2 * (bb * (b - Z) - 1.0) +
                   bb * ((L * L - 1.0) * Z * Z * (bb * bb) * (Z - 2.0 * b) +
                         (L * L - 1.0) * Z * bb * (2.0 * b - Z) + b + Z));

  fix.y21 = fix.y_full[2];
  fix.y22 = fix.y_full[3];
  fix.has_w = false;
  return fix;
}

Eigen::Matrix2cd eval_y(const SmithFixture& fix, cplx z, cplx l) {
  Eigen::Matrix2cd y;
  y << fix.y_full[0].eval(z, l), fix.y_full[1].eval(z, l), fix.y_full[2].eval(z, l),
      fix.y_full[3].eval(z, l);
  return y;
}

Eigen::Matrix2cd eval_a(const SmithFixture& fix, cplx z, cplx l) {
  Eigen::Matrix2cd a;
  a << fix.a_entries[0].eval(z, l), fix.a_entries[1].eval(z, l), fix.a_entries[2].eval(z, l),
      fix.a_entries[3].eval(z, l);
  return a;
}

Eigen::Matrix2cd eval_w(const SmithFixture& fix, cplx z, cplx l) {
  Eigen::Matrix2cd w;
  for (int i = 0; i < 4; ++i)
    w(i / 2, i % 2) = fix.w_num[static_cast<std::size_t>(i)].eval(z, l) /
                      fix.w_den[static_cast<std::size_t>(i)].eval(z, l);
  return w;
}

}  // namespace

std::string fixture_family_name(FixtureFamily f) {
  switch (f) {
    case FixtureFamily::b_quartic_inside: return "b_quartic_inside";
    case FixtureFamily::ab_sextic: return "ab_sextic";
    case FixtureFamily::aiii_b_quartic: return "aiii_b_quartic";
  }
  return "unknown";
}

SmithFixture make_fixture(FixtureFamily family, cplx a, cplx b) {
  switch (family) {
    case FixtureFamily::b_quartic_inside:
      if (std::abs(b.imag()) > 1e-12 || std::abs(b) >= 1.0)
        throw UsageError("b_quartic_inside needs real |b| < 1");
      return fixture_b_quartic(b);
    case FixtureFamily::ab_sextic:
      if (std::abs(a) >= 1.0) throw UsageError("ab_sextic needs |a| < 1");
      return fixture_ab_sextic(a, b);
    case FixtureFamily::aiii_b_quartic:
      if (std::abs(b) >= 1.0) throw UsageError("aiii_b_quartic needs |b| < 1");
      return fixture_aiii_quartic(b);
  }
  throw UsageError("unknown fixture family");
}

cplx gorodetsky_ratio(const SmithFixture& fix, int N, cplx lambda) {
  if (N < 0) throw UsageError("gorodetsky_ratio requires N >= 0");
  if (N == 0) return cplx(1.0);
  const int K = static_cast<int>(fix.tau.size()) / 2;
  const int dim = 4 * K;

  const Poly2 dy21 = fix.y21.dz();
  const Poly2 dy22 = fix.y22.dz();
  const std::vector<cplx> dg = poly_derivative(fix.g_tilde);
  const std::vector<cplx> dh = poly_derivative(fix.h_tilde);

  auto build = [&](int n) {
    Eigen::MatrixXcd M(dim, dim);
    for (int i = 0; i < 2 * K; ++i) {
      const cplx t = fix.tau[static_cast<std::size_t>(i)];
      const cplx y21v = fix.y21.eval(t, lambda), y21d = dy21.eval(t, lambda);
      const cplx y22v = fix.y22.eval(t, lambda), y22d = dy22.eval(t, lambda);
      const cplx gv = poly_eval(fix.g_tilde, t), gd = poly_eval(dg, t);
      const cplx hv = poly_eval(fix.h_tilde, t), hd = poly_eval(dh, t);
      for (int j = 0; j < K; ++j) {
        const cplx zj = std::pow(t, j);
        const cplx zjm = j > 0 ? std::pow(t, j - 1) : cplx(0.0);
        const cplx znj = std::pow(t, n + j);
        const cplx znjm = std::pow(t, n + j - 1);
        // value rows
        M(2 * i, j) = y21v * hv * zj;
        M(2 * i, K + j) = y22v * hv * zj;
        M(2 * i, 2 * K + j) = y21v * gv * znj;
        M(2 * i, 3 * K + j) = y22v * gv * znj;
        // derivative rows
        M(2 * i + 1, j) = (y21d * hv + y21v * hd) * zj + static_cast<double>(j) * y21v * hv * zjm;
        M(2 * i + 1, K + j) =
            (y22d * hv + y22v * hd) * zj + static_cast<double>(j) * y22v * hv * zjm;
        M(2 * i + 1, 2 * K + j) =
            (y21d * gv + y21v * gd) * znj + static_cast<double>(n + j) * y21v * gv * znjm;
        M(2 * i + 1, 3 * K + j) =
            (y22d * gv + y22v * gd) * znj + static_cast<double>(n + j) * y22v * gv * znjm;
      }
    }
    return M;
  };

  const cplx detM0 = build(0).determinant();
  if (std::abs(detM0) < 1e-280) throw SingularM0("det M(0, lambda) vanished; resample lambda");
  const cplx detMN = build(N).determinant();
  // det(i lambda - A_N) carries (1 - lambda^2)^N in class BDI, while the
  // AIII statement for det(lambda - A^_N) carries (lambda^2 - 1)^N.
  const cplx base =
      fix.model.is_bdi() ? 1.0 - lambda * lambda : lambda * lambda - 1.0;
  return std::pow(base, N) * std::pow(fix.det_ratio_prefactor, N) * detMN / detM0;
}

double smith_identity_residual(const SmithFixture& fix, int samples, unsigned seed) {
  if (!fix.has_w) throw UsageError("fixture carries no w matrix; use the implicit check");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < samples) {
    const cplx z(1.5 * box(rng), 1.5 * box(rng));
    const cplx l(1.2 * box(rng), 1.2 * box(rng));
    bool den_ok = true;
    for (int i = 0; i < 4; ++i)
      if (std::abs(fix.w_den[static_cast<std::size_t>(i)].eval(z, l)) < 1e-4) den_ok = false;
    if (!den_ok) continue;

    const Eigen::Matrix2cd y = eval_y(fix, z, l);
    const Eigen::Matrix2cd a = eval_a(fix, z, l);
    const Eigen::Matrix2cd w = eval_w(fix, z, l);
    Eigen::Matrix2cd target = Eigen::Matrix2cd::Zero();
    target(0, 0) = 1.0;
    target(1, 1) = fix.smith_diag.eval(z, l);
    // Backward-error normalization: the cancellation floor of the triple
    // product is set by the factor magnitudes, not by the diagonal target.
    const double scale = std::max(
        {1.0, target.cwiseAbs().maxCoeff(),
         y.cwiseAbs().maxCoeff() * a.cwiseAbs().maxCoeff() * w.cwiseAbs().maxCoeff()});
    worst = std::max(worst, ((y * a * w) - target).cwiseAbs().maxCoeff() / scale);
    ++done;
  }
  return worst;
}

double smith_implicit_w_residual(const SmithFixture& fix, cplx lambda, int degree_cap) {
  // w := (y a)^{-1} diag(1, Delta) must be polynomial in z when y is a valid
  // Smith transform; expand it at scaled roots of unity and measure the
  // weight above the degree cap. Also require det y to be z-independent.
  const int P = 2 * (degree_cap + 1);
  const double R = 1.7;
  std::vector<Eigen::Matrix2cd> values(static_cast<std::size_t>(P));
  double dety_min = 1e300, dety_dev = 0.0;
  cplx dety_ref(0.0);
  for (int k = 0; k < P; ++k) {
    const double th = 2.0 * kPi * k / P;
    const cplx z = R * cplx(std::cos(th), std::sin(th));
    const Eigen::Matrix2cd ya = eval_y(fix, z, lambda) * eval_a(fix, z, lambda);
    Eigen::Matrix2cd target = Eigen::Matrix2cd::Zero();
    target(0, 0) = 1.0;
    target(1, 1) = fix.smith_diag.eval(z, lambda);
    values[static_cast<std::size_t>(k)] = ya.inverse() * target;

    const cplx dy = eval_y(fix, z, lambda).determinant();
    if (k == 0) dety_ref = dy;
    dety_dev = std::max(dety_dev, std::abs(dy - dety_ref));
    dety_min = std::min(dety_min, std::abs(dy));
  }

  double worst = dety_dev / std::max(dety_min, 1e-30);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      std::vector<cplx> coeff(static_cast<std::size_t>(P), cplx(0.0));
      double cmax = 0.0;
      for (int mdeg = 0; mdeg < P; ++mdeg) {
        cplx acc(0.0);
        for (int k = 0; k < P; ++k) {
          const double th = -2.0 * kPi * k * mdeg / P;
          acc += values[static_cast<std::size_t>(k)](r, c) * cplx(std::cos(th), std::sin(th));
        }
        acc /= static_cast<double>(P) * std::pow(R, mdeg);
        coeff[static_cast<std::size_t>(mdeg)] = acc;
        cmax = std::max(cmax, std::abs(acc) * std::pow(R, mdeg));
      }
      for (int mdeg = degree_cap + 1; mdeg < P; ++mdeg)
        worst = std::max(worst, std::abs(coeff[static_cast<std::size_t>(mdeg)]) *
                                    std::pow(R, mdeg) / std::max(cmax, 1e-30));
    }
  }
  return worst;
}

}  // namespace toeplitz_chains
