#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toeplitz_chains/approximation.hpp"
#include "toeplitz_chains/string_correlators.hpp"
#include "toeplitz_chains/symbol.hpp"
#include "toeplitz_chains/toeplitz_engine.hpp"

using namespace toeplitz_chains;

namespace {

ModelSpec target_model(double a, double b) {  // multiplicity-1 f = z^-1 (z-a)(z-b)
  ModelSpec t;
  t.multiplicity = 1;
  t.zeros_inside = {cplx(a, 0)};
  t.zeros_outside = {cplx(b, 0)};
  t.n_P = 1;
  return validate_model(t);
}

}  // namespace

TEST_CASE("partial sum roots") {
  SUBCASE("m = 1") {
    const PartialSumFactorization f = partial_sum_roots(1);
    REQUIRE(f.lambda_roots.size() == 1);
    CHECK(std::abs(f.lambda_roots[0] - cplx(0.5, 0)) < 1e-14);
  }
  SUBCASE("m = 2: quadratic formula values") {
    const PartialSumFactorization f = partial_sum_roots(2);
    REQUIRE(f.lambda_roots.size() == 2);
    const double s3 = std::sqrt(3.0);
    CHECK(std::abs(f.lambda_roots[0] - cplx((s3 + 1) / 4, 0)) < 1e-12);
    CHECK(std::abs(f.lambda_roots[1] - cplx(-(s3 - 1) / 4, 0)) < 1e-12);
  }
  SUBCASE("all roots stay inside the unit disk up to m = 30") {
    for (int m : {5, 10, 18, 30}) CHECK(partial_sum_roots(m).max_abs < 1.0);
  }
}

TEST_CASE("factorization residual on the unit circle") {
  for (int m : {3, 8, 16}) {
    const PartialSumFactorization f = partial_sum_roots(m);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const cplx z = std::polar(1.0, 2.0 * kPi * k / 64.0);
      worst = std::max(worst, std::abs(f.eval_sum(z) - f.eval_product(z)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("approximate_model structure") {
  const ModelSpec target = target_model(0.4, 2.6);
  SUBCASE("zero counts and winding") {
    for (int m : {1, 4, 10}) {
      const ModelSpec fm = approximate_model(target, m);
      CHECK(fm.multiplicity == 2);
      CHECK(fm.n_z() == m * target.n_z());
      CHECK(fm.n_Z() == m * target.n_Z());
      CHECK(winding_number(fm) == winding_number(target));
    }
  }
  SUBCASE("m = 1 substitutes the single root directly") {
    const ModelSpec fm = approximate_model(target, 1);
    CHECK(std::abs(fm.zeros_inside[0] - cplx(0.2, 0)) < 1e-14);   // lambda_1 a
    CHECK(std::abs(fm.zeros_outside[0] - cplx(5.2, 0)) < 1e-14);  // b / lambda_1
  }
  SUBCASE("uniform convergence of g_m^2 on the circle") {
    auto sup_gap = [&](int m) {
      const PartialSumFactorization f = partial_sum_roots(m);
      double worst = 0.0;
      for (int k = 0; k < 1024; ++k) {
        const cplx z = std::polar(1.0, 2.0 * kPi * k / 1024.0);
        cplx gm(1.0);
        for (const cplx& zj : target_model(0.4, 2.6).zeros_inside) gm *= f.eval_sum(zj / z);
        for (const cplx& Zk : target_model(0.4, 2.6).zeros_outside) gm *= f.eval_sum(z / Zk);
        const cplx g = std::sqrt(1.0 - cplx(0.4, 0) / z) * std::sqrt(1.0 - z / cplx(2.6, 0));
        worst = std::max(worst, std::abs(gm * gm - g * g));
      }
      return worst;
    };
    const double e2 = sup_gap(2), e4 = sup_gap(4), e8 = sup_gap(8);
    CHECK(e4 < e2);
    CHECK(e8 < e4);
  }
}

TEST_CASE("order parameter convergence") {
  SUBCASE("generic target: strictly decreasing error, small by m = 20") {
    const auto rows = order_parameter_convergence(target_model(0.4, 2.6), {2, 4, 8, 16, 20});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error < rows[i - 1].error);
    CHECK(rows.back().error < 1e-3);
    // geometric decay rate consistent with max(|a|, 1/|b|)
    const double rate = (rows[2].log_error - rows[0].log_error) / (8 - 2);
    CHECK(rate < std::log10(std::max(0.4, 1 / 2.6)) * 0.5);
  }
  SUBCASE("mutually inverse target: both sides are exactly 1") {
    const auto rows = order_parameter_convergence(target_model(0.4, 2.5), {2, 4, 8});
    for (const ConvergenceRow& r : rows) CHECK(r.error < 1e-14);
  }
}

TEST_CASE("quarter-root identity") {
  SUBCASE("frozen value at m = 1, z = 0.5") {
    const double err = quarter_root_identity_error(1, {cplx(0.5, 0)});
    CHECK(err == doctest::Approx(std::abs(std::pow(0.5, 0.25) - 0.875)).epsilon(1e-10));
  }
  SUBCASE("exact at z = 0") { CHECK(quarter_root_identity_error(3, {cplx(0.0)}) < 1e-14); }
  SUBCASE("strictly decreasing over m on the grid") {
    const std::vector<cplx> grid = quarter_root_grid(0.9);
    double prev = 1e9;
    for (int m : {1, 2, 4, 8}) {
      const double err = quarter_root_identity_error(m, grid);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("both limit orders agree on the order parameter") {
  // N -> infinity first (closed form on f_m), then m; and the numeric
  // determinant at fixed large N for the same f_m.
  const ModelSpec target = target_model(0.4, 2.6);
  const ModelSpec fm = approximate_model(target, 2);
  const double closed = order_parameter(fm);
  const RationalSymbol sym = bdi_string_symbol(fm, winding_number(fm));
  const double numeric = std::abs(numeric_symbol_det(sym, 30).value);
  CHECK(std::abs(closed - numeric) < 1e-6);
}
