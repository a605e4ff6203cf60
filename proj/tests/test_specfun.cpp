/*
   Copyright 2026 The misolink Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "miso/specfun.hpp"

using namespace miso;
namespace sf = miso::specfun;

namespace {

/// Central chi-square CDF with even dof, from the finite closed form
/// 1 - e^{-y/2} sum_{j<m} (y/2)^j / j!. Test-side oracle, independent of the
/// series implementation under test.
double central_chi2_cdf(int dof, double y) {
  int m = dof / 2;
  double x = y / 2.0;
  double sum = 0.0, term = 1.0;
  for (int j = 0; j < m; ++j) {
    sum += term;
    term *= x / (j + 1);
  }
  return 1.0 - std::exp(-x) * sum;
}

/// Exact binomial coefficients via Pascal's triangle in 64-bit integers.
std::uint64_t binom_u64(int n, int k) {
  static std::vector<std::vector<std::uint64_t>> tri;
  if (tri.empty()) {
    tri.resize(70);
    for (int i = 0; i < 70; ++i) {
      tri[i].resize(i + 1, 1);
      for (int j = 1; j < i; ++j) tri[i][j] = tri[i - 1][j - 1] + tri[i - 1][j];
    }
  }
  return tri[n][k];
}

}  // namespace

TEST_CASE("reg_inc_gamma matches its defining examples") {
  CHECK(sf::reg_inc_gamma(1, 0.1) == Catch::Approx(1.0 - std::exp(-0.1)).epsilon(1e-14));
  CHECK(sf::reg_inc_gamma(4, 0.0) == 0.0);
  // numeric integration oracle for Gamma_2(1) = int_0^1 t e^-t dt
  double oracle = sf::integrate_finite(
      [](double t) { return t * std::exp(-t); }, 0.0, 1.0, 1e-12);
  CHECK(sf::reg_inc_gamma(2, 1.0) == Catch::Approx(oracle).margin(1e-10));
  CHECK(sf::reg_inc_gamma(2, 1.0) ==
        Catch::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("reg_inc_gamma domain and limits") {
  CHECK_THROWS_AS(sf::reg_inc_gamma(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sf::reg_inc_gamma(2, -0.5), std::domain_error);
  double prev = -1.0;
  for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1000.0}) {
    double v = sf::reg_inc_gamma(3, x);
    CHECK(v >= prev);
    CHECK((v >= 0.0 && v <= 1.0));
    prev = v;
  }
  CHECK(sf::reg_inc_gamma(8, 1000.0) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ncx2_cdf trivial reductions") {
  CHECK(sf::ncx2_cdf(2, 0.0, 2.0) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  for (int dof : {2, 4, 8}) {
    CHECK(sf::ncx2_cdf(dof, 3.0, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(sf::ncx2_cdf(3, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sf::ncx2_cdf(2, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sf::ncx2_cdf(2, 1.0, -1.0), std::domain_error);
}

TEST_CASE("ncx2_cdf pinned values") {
  // adaptive integration of the density is the stated oracle; both the
  // frozen value and the live integral must agree
  double live = sf::integrate_finite(
      [](double t) { return sf::ncx2_pdf(2, 2.0, t); }, 0.0, 2.0, 1e-12);
  CHECK(sf::ncx2_cdf(2, 2.0, 2.0) == Catch::Approx(live).margin(1e-9));
  CHECK(sf::ncx2_cdf(2, 2.0, 2.0) ==
        Catch::Approx(0.34574583872316448).epsilon(1e-12));
  CHECK(sf::ncx2_cdf(8, 50.0, 40.0) ==
        Catch::Approx(0.101750068253089732).epsilon(1e-11));
  CHECK(sf::ncx2_cdf(2, 0.5, 2.0) ==
        Catch::Approx(0.545737098862241793).epsilon(1e-12));
}

TEST_CASE("ncx2_cdf deep left tail keeps relative accuracy") {
  CHECK(sf::ncx2_cdf(2, 200.0, 2.12) ==
        Catch::Approx(1.10883773142679279e-37).epsilon(1e-9));
  CHECK(sf::ncx2_cdf(4, 400.0, 9.0) ==
        Catch::Approx(2.3015290782360796e-66).epsilon(1e-9));
}

TEST_CASE("ncx2_cdf equals central chi-square closed forms at delta = 0") {
  for (int dof : {2, 4, 6, 8})
    for (double y : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0})
      CHECK(sf::ncx2_cdf(dof, 0.0, y) ==
            Catch::Approx(central_chi2_cdf(dof, y)).epsilon(1e-12).margin(1e-15));
}

TEST_CASE("chi-square / incomplete-gamma identity") {
  for (int m = 1; m <= 8; ++m)
    for (double x : {0.2, 1.0, 3.0, 7.5})
      CHECK(sf::reg_inc_gamma(m, x) ==
            Catch::Approx(sf::ncx2_cdf(2 * m, 0.0, 2.0 * x)).epsilon(1e-12));
}

TEST_CASE("ncx2_pdf trivial reductions and pins") {
  for (double y : {0.3, 1.0, 4.0})
    CHECK(sf::ncx2_pdf(2, 0.0, y) ==
          Catch::Approx(0.5 * std::exp(-y / 2.0)).epsilon(1e-13));
  CHECK(sf::ncx2_pdf(4, 0.0, 2.0) ==
        Catch::Approx(0.25 * 2.0 * std::exp(-1.0) / 2.0 * 2.0).epsilon(1e-13));
  CHECK(sf::ncx2_pdf(4, 0.0, 2.0) ==
        Catch::Approx(2.0 * std::exp(-1.0) / 4.0).epsilon(1e-13));
  CHECK(sf::ncx2_pdf(2, 4.0, 3.0) ==
        Catch::Approx(0.108091481670466148).epsilon(1e-12));
  CHECK(sf::ncx2_pdf(8, 50.0, 40.0) ==
        Catch::Approx(0.0146315374508010458).epsilon(1e-11));
}

TEST_CASE("ncx2_pdf integrates to one") {
  for (int dof : {2, 4, 8}) {
    for (double delta : {0.0, 2.0, 10.0, 50.0}) {
      double mid = dof + delta;
      double hi = mid + 60.0 * std::sqrt(2.0 * (dof + 2.0 * delta));
      double total =
          sf::integrate_finite([&](double t) { return sf::ncx2_pdf(dof, delta, t); },
                               0.0, mid, 1e-11) +
          sf::integrate_finite([&](double t) { return sf::ncx2_pdf(dof, delta, t); },
                               mid, hi, 1e-11);
      CHECK(total == Catch::Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("cdf derivative matches pdf (finite differences)") {
  const double h = 1e-5;
  for (double delta : {0.0, 1.0, 10.0, 50.0}) {
    for (double y : {0.1, 0.7, 2.0, 8.0, 20.0, 50.0}) {
      for (int dof : {2, 4}) {
        double fd = (sf::ncx2_cdf(dof, delta, y + h) - sf::ncx2_cdf(dof, delta, y - h)) /
                    (2.0 * h);
        CHECK(fd == Catch::Approx(sf::ncx2_pdf(dof, delta, y)).margin(1e-6));
      }
    }
  }
}

TEST_CASE("ncx2_cdf nonincreasing in the noncentrality") {
  for (int dof : {2, 4}) {
    for (double y : {0.5, 2.0, 10.0, 40.0}) {
      double prev = 2.0;
      for (double delta : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        double v = sf::ncx2_cdf(dof, delta, y);
        CHECK(v <= prev + 1e-15);
        prev = v;
      }
    }
  }
}

TEST_CASE("binomial lemma: Vandermonde identity, exact integers") {
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      std::uint64_t lhs = binom_u64(m + n, m);
      std::uint64_t rhs = 0;
      for (int i = 0; i <= std::min(m, n); ++i)
        rhs += binom_u64(m, i) * binom_u64(n, i);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("gamma-Laguerre rules: normalization, ordering, positivity") {
  for (int M : {1, 2, 4, 8}) {
    for (int order : {32, 64, 256, 512}) {
      const auto& rule = sf::gamma_laguerre_cached(order, M);
      REQUIRE(rule.kind == sf::QuadratureRule::Kind::laguerre_gamma);
      CHECK(rule.alpha == static_cast<double>(M - 1));
      double one = rule.apply([](double) { return 1.0; });
      CHECK(one == Catch::Approx(1.0).margin(1e-12));
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.weights[i] > 0.0);
        CHECK(rule.nodes[i] >= 0.0);
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      }
    }
  }
}

TEST_CASE("gamma_expectation reproduces Gamma moments") {
  for (int M = 1; M <= 6; ++M) {
    for (int k = 0; k <= 4; ++k) {
      double expected = 1.0;
      for (int j = 0; j < k; ++j) expected *= M + j;
      double got = sf::gamma_expectation(
          M, [&](double g) { return std::pow(g, k); }, 1e-12);
      CHECK(got == Catch::Approx(expected).epsilon(1e-12).margin(1e-10));
    }
  }
}

TEST_CASE("gamma_expectation examples") {
  CHECK(sf::gamma_expectation(3, [](double) { return 1.0; }, 1e-10) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(sf::gamma_expectation(2, [](double g) { return g; }, 1e-10) ==
        Catch::Approx(2.0).epsilon(1e-10));
  CHECK(sf::gamma_expectation(3, [](double g) { return std::exp(-g); }, 1e-10) ==
        Catch::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("gauss-legendre rule basics") {
  auto rule = sf::QuadratureRule::gauss_legendre(16, 0.0, 1.0);
  REQUIRE(rule.kind == sf::QuadratureRule::Kind::legendre);
  CHECK(rule.apply([](double x) { return x * x; }) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(rule.apply([](double) { return 1.0; }) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("integrate_finite examples and errors") {
  CHECK(sf::integrate_finite([](double) { return 1.0; }, 0.0, 2.0, 1e-10) ==
        Catch::Approx(2.0).epsilon(1e-13));
  CHECK(sf::integrate_finite([](double t) { return t; }, 0.0, 1.0, 1e-10) ==
        Catch::Approx(0.5).epsilon(1e-13));
  CHECK(sf::integrate_finite([](double t) { return std::exp(-t); }, 0.0, 10.0, 1e-10) ==
        Catch::Approx(1.0 - std::exp(-10.0)).margin(1e-10));
  CHECK_THROWS_AS(sf::integrate_finite([](double t) { return 1.0 / t; }, 0.0, 1.0, 1e-8),
                  numeric_error);
  CHECK_THROWS_AS(sf::integrate_finite([](double) { return 0.0; }, 1.0, 0.0, 1e-8),
                  std::domain_error);
}

TEST_CASE("find_root examples and bracket error") {
  CHECK(sf::find_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12) ==
        Catch::Approx(1.0).margin(1e-10));
  CHECK(sf::find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12) ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-10));
  CHECK(sf::find_root([](double x) { return std::exp(x) - 3.0; }, 0.0, 2.0, 1e-12) ==
        Catch::Approx(std::log(3.0)).margin(1e-10));
  CHECK_THROWS_AS(sf::find_root([](double x) { return x + 3.0; }, 0.0, 1.0, 1e-12),
                  bracket_error);
}

TEST_CASE("minimize_scalar examples, boundary minima included") {
  auto r1 = sf::minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3); },
                                0.0, 1.0, 1e-8);
  CHECK(r1.x == Catch::Approx(0.3).margin(1e-6));
  CHECK(r1.value == Catch::Approx(0.0).margin(1e-12));
  auto r2 = sf::minimize_scalar([](double x) { return x; }, 0.0, 1.0, 1e-8);
  CHECK(r2.x == 0.0);
  CHECK(r2.value == 0.0);
  auto r3 = sf::minimize_scalar([](double x) { return std::cos(x); }, 0.0, M_PI, 1e-8);
  CHECK(r3.x == Catch::Approx(M_PI).margin(1e-6));
  CHECK(r3.value == Catch::Approx(-1.0).margin(1e-12));
}
