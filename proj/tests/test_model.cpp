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
#include <complex>

#include "miso/model.hpp"

using namespace miso;

TEST_CASE("effective_params limits and values") {
  auto zero = effective_params({2, 2.0, 10.0, 0.0});
  CHECK(zero.mu == 0.0);
  CHECK(zero.beta == Catch::Approx(std::expm1(2.0) / 10.0).epsilon(1e-15));

  auto half = effective_params({2, 2.0, 10.0, 1.0 / std::sqrt(2.0)});
  CHECK(half.mu == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(half.beta == Catch::Approx(2.0 * std::expm1(2.0) / 10.0).epsilon(1e-12));

  auto ep = effective_params({2, 2.0, 10.0, 0.9});
  CHECK(ep.mu == Catch::Approx(0.81 / 0.19).epsilon(1e-14));
  CHECK(ep.beta == Catch::Approx(3.3626611047003423).epsilon(1e-13));
  CHECK(ep.delta(0.0) == 0.0);
  CHECK(ep.delta(3.0) == Catch::Approx(6.0 * ep.mu));
}

TEST_CASE("effective_params identity beta*P/(mu+1) = e^R - 1") {
  for (double rho : {0.0, 0.3, 0.7, 0.95, 0.999}) {
    for (double R : {0.5, 2.0}) {
      for (double P : {0.5, 10.0, 300.0}) {
        auto ep = effective_params({3, R, P, rho});
        CHECK(ep.beta * P / (ep.mu + 1.0) ==
              Catch::Approx(std::expm1(R)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("effective_params signals rho = 1") {
  CHECK_THROWS_AS(effective_params({2, 2.0, 10.0, 1.0}), singular_parameter);
}

TEST_CASE("SystemConfig validation") {
  CHECK_THROWS_AS((SystemConfig{0, 2.0, 10.0, 0.5}.validate()), config_error);
  CHECK_THROWS_AS((SystemConfig{2, -1.0, 10.0, 0.5}.validate()), config_error);
  CHECK_THROWS_AS((SystemConfig{2, 2.0, 0.0, 0.5}.validate()), config_error);
  CHECK_THROWS_AS((SystemConfig{2, 2.0, 10.0, 1.5}.validate()), config_error);
}

TEST_CASE("sample_channel degenerate correlations") {
  auto gen = rng::make_stream(42, 0);
  ChannelDraw d = sample_channel(gen, 3, 1.0);
  for (int i = 0; i < 3; ++i) CHECK(d.h[i] == d.h_old[i]);

  ChannelDraw d0 = sample_channel(gen, 3, 0.0);
  for (int i = 0; i < 3; ++i) CHECK(d0.h[i] == d0.w[i]);

  double g = 0.0;
  for (auto& c : d.h_old) g += std::norm(c);
  CHECK(d.gamma == Catch::Approx(g).epsilon(1e-12));
}

TEST_CASE("sample_channel empirical correlation and power") {
  const double rho = 0.7;
  const int M = 2;
  const long long N = 1000000;
  auto gen = rng::make_stream(7, 3);
  ChannelDraw d;
  double num = 0.0, den_h = 0.0, den_o = 0.0, power = 0.0;
  for (long long i = 0; i < N; ++i) {
    sample_channel(gen, M, rho, d);
    for (int j = 0; j < M; ++j) {
      num += std::real(d.h[j] * std::conj(d.h_old[j]));
      den_h += std::norm(d.h[j]);
      den_o += std::norm(d.h_old[j]);
      power += std::norm(d.h[j]);
    }
  }
  double rho_hat = num / std::sqrt(den_h * den_o);
  CHECK(rho_hat == Catch::Approx(rho).margin(3e-3));
  double mean_power = power / static_cast<double>(N);  // per-entry mean is 1
  CHECK(mean_power == Catch::Approx(1.0).margin(3.0 / std::sqrt(double(M) * N)));
}

TEST_CASE("conditional construction has nc-chi2 mean 2 + delta") {
  // A = |sqrt(delta) + sqrt(2) w^H h_old / sqrt(gamma)|^2 given gamma
  const double rho = 0.7;
  const double mu = rho * rho / (1.0 - rho * rho);
  const int M = 2;
  const long long N = 1000000;
  auto gen = rng::make_stream(11, 0);
  ChannelDraw d;
  double acc = 0.0, acc2 = 0.0;
  for (long long i = 0; i < N; ++i) {
    sample_channel(gen, M, rho, d);
    std::complex<double> proj{0.0, 0.0};
    for (int j = 0; j < M; ++j) proj += std::conj(d.w[j]) * d.h_old[j];
    proj /= std::sqrt(d.gamma);
    double delta = 2.0 * mu * d.gamma;
    double a = std::norm(std::sqrt(delta) + std::sqrt(2.0) * proj);
    double centered = a - delta;  // E[A | gamma] = 2 + delta
    acc += centered;
    acc2 += centered * centered;
  }
  double mean = acc / N;
  double sd = std::sqrt((acc2 / N - mean * mean) / N);
  CHECK(mean == Catch::Approx(2.0).margin(3.0 * sd));
}

TEST_CASE("mutual_info scheme identities per draw") {
  auto gen = rng::make_stream(5, 9);
  for (int M : {2, 4}) {
    for (int rep = 0; rep < 50; ++rep) {
      ChannelDraw d = sample_channel(gen, M, 0.8);
      double uspa = mutual_info(d, 10.0, Scheme::uspa);
      double bfic = mutual_info(d, 10.0, Scheme::bf_ic);
      CHECK(mutual_info_lambda(d, 10.0, 1.0 / M) == Catch::Approx(uspa).epsilon(1e-12));
      CHECK(mutual_info_lambda(d, 10.0, 1.0) == Catch::Approx(bfic).epsilon(1e-12));
    }
  }
  // rho = 1: beamforming on the feedback equals perfect beamforming
  for (int rep = 0; rep < 50; ++rep) {
    ChannelDraw d = sample_channel(gen, 3, 1.0);
    CHECK(mutual_info(d, 5.0, Scheme::bf_ic) ==
          Catch::Approx(mutual_info(d, 5.0, Scheme::bf_perfect)).epsilon(1e-12));
  }
}

TEST_CASE("lambda mutual information stays between its eigen-components") {
  auto gen = rng::make_stream(17, 1);
  for (int rep = 0; rep < 200; ++rep) {
    int M = 2 + rep % 3;
    ChannelDraw d = sample_channel(gen, M, 0.6);
    double a = 0.0, n2 = 0.0;
    {
      std::complex<double> ip{0.0, 0.0};
      for (int j = 0; j < M; ++j) {
        ip += std::conj(d.h_old[j]) * d.h[j];
        n2 += std::norm(d.h[j]);
      }
      a = std::norm(ip) / d.gamma;
    }
    double rest = (n2 - a) / (M - 1);
    double lambda = 1.0 / M + (1.0 - 1.0 / M) * (rep % 7) / 6.0;
    double q = std::expm1(mutual_info_lambda(d, 1.0, lambda));
    CHECK(q >= std::min(a, rest) - 1e-9);
    CHECK(q <= std::max(a, rest) + 1e-9);
  }
}

TEST_CASE("mutual_info degenerate feedback") {
  ChannelDraw d;
  d.h_old = {std::complex<double>{0.0, 0.0}};
  d.w = {std::complex<double>{1.0, 0.0}};
  d.h = d.w;
  d.gamma = 0.0;
  CHECK_THROWS_AS(mutual_info(d, 1.0, Scheme::bf_ic), std::domain_error);
}

TEST_CASE("stream derivation is deterministic and index-separated") {
  auto a1 = rng::make_stream(123, 0);
  auto a2 = rng::make_stream(123, 0);
  auto b = rng::make_stream(123, 1);
  CHECK(a1() == a2());
  auto x = a1(), y = b();
  CHECK(x != y);
}
