#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "toeplitz_chains/correlation_matrix.hpp"
#include "toeplitz_chains/io.hpp"
#include "toeplitz_chains/smith.hpp"

using namespace toeplitz_chains;

namespace {

cplx random_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.85, 0.85);
  while (true) {
    const cplx l(u(rng), 0.4 * u(rng));
    if (std::abs(l * l - 1.0) > 0.05 && std::abs(l) > 0.05) return l;
  }
}

}  // namespace

TEST_CASE("quartic fixture reproduces the closed characteristic polynomial") {
  const double b = 0.5;
  const SmithFixture fix = make_fixture(FixtureFamily::b_quartic_inside, cplx(0), cplx(b, 0));
  CHECK(gorodetsky_ratio(fix, 0, cplx(0.3, 0)) == cplx(1.0));
  for (int N : {1, 2, 3, 6, 9}) {
    const cplx l(0.3, 0.0);
    const cplx want = std::pow(1.0 - l * l, N - 1) * (std::pow(b, 2 * N) - l * l);
    CHECK(std::abs(gorodetsky_ratio(fix, N, l) - want) < 1e-12 * std::abs(want));
  }
}

TEST_CASE("fixtures match the numeric characteristic polynomial") {
  std::mt19937_64 rng(515);
  const std::vector<SmithFixture> fixtures = {
      make_fixture(FixtureFamily::b_quartic_inside, cplx(0), cplx(0.5, 0)),
      make_fixture(FixtureFamily::ab_sextic, cplx(0.4, 0), cplx(0.6, 0)),
      make_fixture(FixtureFamily::ab_sextic, cplx(0.5, 0), cplx(3.0, 0)),
      make_fixture(FixtureFamily::aiii_b_quartic, cplx(0), std::polar(0.5, kPi / 3.0))};
  for (const SmithFixture& fix : fixtures) {
    for (int trial = 0; trial < 5; ++trial) {
      const cplx l = random_lambda(rng);
      for (int N : {1, 4, 8, 12}) {
        const cplx ratio = gorodetsky_ratio(fix, N, l);
        const cplx numeric = char_poly_det(fix.model, l, N).value;
        CHECK(std::abs(ratio - numeric) <= 1e-8 * std::max({std::abs(ratio), std::abs(numeric), 1e-8}));
      }
    }
  }
}

TEST_CASE("Smith identity y a w = diag(1, Delta)") {
  CHECK(smith_identity_residual(make_fixture(FixtureFamily::b_quartic_inside, cplx(0), cplx(0.5, 0)),
                                20, 20260601u) < 1e-8);
  CHECK(smith_identity_residual(make_fixture(FixtureFamily::ab_sextic, cplx(0.4, 0), cplx(0.6, 0)),
                                20, 20260602u) < 1e-8);
  CHECK(smith_identity_residual(make_fixture(FixtureFamily::ab_sextic, cplx(0.5, 0), cplx(3.0, 0)),
                                20, 20260603u) < 1e-8);
}

TEST_CASE("AIII fixture: implicit w is polynomial and unimodular") {
  const SmithFixture fix =
      make_fixture(FixtureFamily::aiii_b_quartic, cplx(0), cplx(0.25, 0.433013));
  CHECK(smith_implicit_w_residual(fix, cplx(0.31, 0.17), 6) < 1e-8);
  CHECK(smith_implicit_w_residual(fix, cplx(-0.42, 0.05), 6) < 1e-8);
}

TEST_CASE("sextic fixtures reproduce the printed quartic-in-lambda factors") {
  SUBCASE("both zeros inside") {
    const double a = 0.4, b = 0.6;
    const SmithFixture fix = make_fixture(FixtureFamily::ab_sextic, cplx(a, 0), cplx(b, 0));
    for (int N : {2, 5, 9}) {
      const cplx l(0.35, 0.0);
      const double c0 = std::pow(a * b, 2 * N);
      const double c1 = std::pow(a * b, N) / std::pow(a - b, 2) *
                        (2 * (1 - a * a) * (1 - b * b) -
                         std::pow(1 - a * b, 2) * (std::pow(a / b, N) + std::pow(b / a, N)));
      const cplx quartic = std::pow(l, 4) + c1 * l * l + c0;
      const cplx want = std::pow(1.0 - l * l, N - 2) * quartic;
      CHECK(std::abs(gorodetsky_ratio(fix, N, l) - want) < 1e-10 * std::abs(want));
    }
  }
  SUBCASE("one zero on each side") {
    const double a = 0.5, b = 3.0;
    const SmithFixture fix = make_fixture(FixtureFamily::ab_sextic, cplx(a, 0), cplx(b, 0));
    for (int N : {2, 5, 9}) {
      const cplx l(0.35, 0.0);
      const double c0 = std::pow((std::pow(a / b, N) * std::pow(1 - a * b, 2) -
                                  (1 - a * a) * (1 - b * b)) /
                                     std::pow(b - a, 2),
                                 2);
      const double c1 = (2 * (1 - a * a) * (1 - b * b) -
                         std::pow(1 - a * b, 2) * (std::pow(a, 2 * N) + std::pow(b, -2 * N))) /
                        std::pow(b - a, 2);
      const cplx quartic = std::pow(l, 4) + c1 * l * l + c0;
      const cplx want = std::pow(1.0 - l * l, N - 2) * quartic;
      CHECK(std::abs(gorodetsky_ratio(fix, N, l) - want) < 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("AIII fixture reproduces (lambda^2 - 1)^{N-1} (lambda^2 - |b|^{2N})") {
  const cplx b = std::polar(0.5, kPi / 3.0);
  const SmithFixture fix = make_fixture(FixtureFamily::aiii_b_quartic, cplx(0), b);
  for (int N : {1, 3, 7}) {
    const cplx l(0.3, 0.1);
    const cplx want = std::pow(l * l - 1.0, N - 1) * (l * l - std::pow(std::abs(b), 2 * N));
    CHECK(std::abs(gorodetsky_ratio(fix, N, l) - want) < 1e-10 * std::abs(want));
  }
}

TEST_CASE("fixture JSON round trip and shipped data files") {
  const SmithFixture fix = make_fixture(FixtureFamily::ab_sextic, cplx(0.4, 0), cplx(0.6, 0));
  const nlohmann::json doc = fixture_to_json(fix);
  const SmithFixture back = fixture_from_json(doc);
  const cplx l(0.27, 0.13);
  CHECK(std::abs(gorodetsky_ratio(fix, 5, l) - gorodetsky_ratio(back, 5, l)) < 1e-12);

  for (const char* path : {"data/fixtures/b_quartic_inside_b0.5.json",
                           "data/fixtures/ab_sextic_a0.4_b0.6.json",
                           "data/fixtures/ab_sextic_a0.5_b3.json",
                           "data/fixtures/aiii_b_quartic_b0.5exp60deg.json"}) {
    std::ifstream is(path);
    REQUIRE_MESSAGE(is.good(), path);
    std::stringstream ss;
    ss << is.rdbuf();
    const SmithFixture loaded = fixture_from_json(nlohmann::json::parse(ss.str()));
    const cplx ratio = gorodetsky_ratio(loaded, 4, l);
    const cplx numeric = char_poly_det(loaded.model, l, 4).value;
    CHECK(std::abs(ratio - numeric) <= 1e-8 * std::max(std::abs(numeric), 1e-8));
  }
}
