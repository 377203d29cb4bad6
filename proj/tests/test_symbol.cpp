#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "toeplitz_chains/symbol.hpp"

using namespace toeplitz_chains;

namespace {

ModelSpec quartic(double a, double b, int n_P = 0) {
  ModelSpec m;
  m.zeros_inside = {cplx(a, 0)};
  m.zeros_outside = {cplx(b, 0)};
  m.n_P = n_P;
  return validate_model(m);
}

}  // namespace

TEST_CASE("bdi string symbol canonical data") {
  const ModelSpec m = quartic(0.5, 3.0);

  SUBCASE("alpha = 2: no auxiliary roots") {
    const RationalSymbol s = bdi_string_symbol(m, 2);
    CHECK(s.epsilon_roots == 0);
    CHECK(s.p() == 1);
    CHECK(s.q() == 1);
    CHECK(std::abs(s.rho - cplx(-1.0 / 3.0, 0)) < 1e-14);
    CHECK(std::abs(s.inner_poles[0] - cplx(1.0 / 3.0, 0)) < 1e-14);
    CHECK(std::abs(s.outer_poles[0] - cplx(2.0, 0)) < 1e-14);
    REQUIRE(s.numerator_roots.size() == 2);
    CHECK(std::abs(s.numerator_roots[0] - cplx(0.5, 0)) < 1e-14);
    CHECK(std::abs(s.numerator_roots[1] - cplx(3.0, 0)) < 1e-14);
  }
  SUBCASE("alpha = 0: two auxiliary roots") {
    CHECK(bdi_string_symbol(m, 0).epsilon_roots == 2);
  }
  SUBCASE("trivial f = 1") {
    const ModelSpec one = validate_model(ModelSpec{});
    const RationalSymbol s = bdi_string_symbol(one, 0);
    CHECK(s.trivial);
    CHECK(s.trivial_exponent == 0);
    CHECK(std::abs(s.eval(cplx(0.3, 0.2)) - cplx(1.0)) < 1e-14);
  }
}

TEST_CASE("branch: symbol at z=1 equals sign of f(1)") {
  for (double sigma : {1.0, -1.0}) {
    ModelSpec m = quartic(0.5, 3.0, 1);
    m.sigma_phase = cplx(sigma, 0);
    m = validate_model(m);
    for (int alpha : {-1, 0, 1, 2, 3}) {
      const RationalSymbol s = bdi_string_symbol(m, alpha);
      // the z^-alpha twist is 1 at z = 1, so t(1) = f(1)/|f(1)| for every alpha
      const cplx at_one = s.eval(cplx(1.0));
      CHECK(at_one.real() == doctest::Approx(sigma).epsilon(1e-12));
    }
  }
}

TEST_CASE("aiii symbol reduces to the bdi one on real zeros") {
  const ModelSpec m = quartic(0.5, 3.0);
  ModelSpec ma = m;
  ma.cls = SymmetryClass::AIII;
  const RationalSymbol sb = bdi_string_symbol(m, 2);
  const RationalSymbol sa = aiii_string_symbol(ma, 2);
  for (double th = 0.1; th < 6.0; th += 0.9) {
    const cplx z = std::polar(1.0, th);
    CHECK(std::abs(sb.eval(z) - sa.eval(z)) < 1e-13);
  }
}

TEST_CASE("aiii symbol conjugates the poles") {
  ModelSpec m;
  m.cls = SymmetryClass::AIII;
  m.zeros_inside = {cplx(0.3, 0.4)};
  m.zeros_outside = {cplx(1.5, -2.0)};
  m = validate_model(m);
  const RationalSymbol s = aiii_string_symbol(m, 2);
  CHECK(std::abs(s.outer_poles[0] - 1.0 / std::conj(cplx(0.3, 0.4))) < 1e-14);
  CHECK(std::abs(s.inner_poles[0] - 1.0 / std::conj(cplx(1.5, -2.0))) < 1e-14);
}

TEST_CASE("aiii symbol is theta-independent") {
  ModelSpec m1;
  m1.cls = SymmetryClass::AIII;
  m1.zeros_inside = {cplx(0.3, 0.4)};
  m1.sigma_phase = std::polar(1.0, 0.9);
  ModelSpec m2 = m1;
  m2.sigma_phase = cplx(1.0, 0.0);
  const RationalSymbol s1 = aiii_string_symbol(validate_model(m1), 1);
  const RationalSymbol s2 = aiii_string_symbol(validate_model(m2), 1);
  const cplx z = std::polar(1.0, 0.4);
  CHECK(std::abs(s1.eval(z) - s2.eval(z)) < 1e-14);
}

TEST_CASE("efp symbol of the quartic matches the Day form") {
  const ModelSpec m = quartic(0.5, 4.0, 2);
  const RationalSymbol s = efp_symbol(m);
  CHECK_FALSE(s.trivial);
  CHECK(std::abs(s.rho - cplx((0.25 - 0.5) / 2.0, 0)) < 1e-12);
  REQUIRE(s.numerator_roots.size() == 2);
  // roots {1, -1} in some order
  CHECK(std::abs(std::abs(s.numerator_roots[0]) - 1.0) < 1e-10);
  CHECK(std::abs(s.numerator_roots[0] + s.numerator_roots[1]) < 1e-10);
  CHECK(std::abs(s.inner_poles[0] - cplx(0.25, 0)) < 1e-12);
  CHECK(std::abs(s.outer_poles[0] - cplx(2.0, 0)) < 1e-12);
}

TEST_CASE("fourier coefficients: reference values and dual-method agreement") {
  SUBCASE("f = 1") {
    const FourierSlice s = fourier_coefficients(validate_model(ModelSpec{}), -3, 3);
    for (int n = -3; n <= 3; ++n)
      CHECK(std::abs(s.at(n) - (n == 0 ? cplx(1.0) : cplx(0.0))) < 1e-14);
  }
  SUBCASE("t~_2 of (z - 0.5)^2 is 0.375") {
    ModelSpec m;
    m.zeros_inside = {cplx(0.5, 0)};
    m = validate_model(m);
    CHECK(fourier_coefficients(m, 2, 2).at(2).real() == doctest::Approx(0.375).epsilon(1e-12));
  }
  SUBCASE("residue and fft agree to 1e-10") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 4; ++t) {
      const ModelSpec m = testing::random_bdi_model(rng, 4, true);
      const FourierSlice r = fourier_coefficients_residue(m, -50, 50);
      const FourierSlice f = fourier_coefficients_fft(m, -50, 50);
      double worst = 0.0;
      for (int n = -50; n <= 50; ++n) worst = std::max(worst, std::abs(r.at(n) - f.at(n)));
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("one-sided support for n_Z = 0") {
  ModelSpec m;
  m.zeros_inside = {cplx(0.5, 0), cplx(-0.3, 0)};
  m.n_P = 1;
  m = validate_model(m);
  const FourierSlice s = fourier_coefficients(m, -10, 10);
  for (int n = -10; n < 0; ++n) CHECK(std::abs(s.at(n)) < 1e-14);
  CHECK(std::abs(s.at(0)) > 1e-3);
}

TEST_CASE("block symbol sampler") {
  SUBCASE("f = 1 at lambda = 0 is the constant antisymmetric block") {
    const BlockSampler phi = block_symbol_sampler(validate_model(ModelSpec{}), cplx(0.0));
    const Eigen::Matrix2cd v = phi(std::polar(1.0, 0.3));
    CHECK(std::abs(v(0, 0)) < 1e-14);
    CHECK(std::abs(v(0, 1) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(v(1, 0) + cplx(1.0)) < 1e-14);
  }
  SUBCASE("Phi(1/z, lambda) = -Phi(z, -lambda) up to the index swap") {
    // The two sides differ by conjugation with the constant swap matrix,
    // which leaves every block Toeplitz determinant unchanged.
    const ModelSpec m = quartic(0.5, 3.0, 2);
    const cplx lambda(0.4, 0.1);
    const BlockSampler plus = block_symbol_sampler(m, lambda);
    const BlockSampler minus = block_symbol_sampler(m, -lambda);
    Eigen::Matrix2cd swap;
    swap << 0, 1, 1, 0;
    for (double th = 0.2; th < 6.0; th += 1.1) {
      const cplx z = std::polar(1.0, th);
      const Eigen::Matrix2cd lhs = swap * plus(1.0 / z) * swap;
      const Eigen::Matrix2cd rhs = -minus(z);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
