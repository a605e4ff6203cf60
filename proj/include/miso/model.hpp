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

#ifndef MISO_MODEL_HPP
#define MISO_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "miso/common.hpp"

namespace miso {

/// The tuple every outage formula consumes: antenna count M, target rate R
/// in nats per channel use, average SNR P on linear scale, and the feedback
/// correlation rho in [0,1] (rho = 1 means instantaneous feedback).
struct SystemConfig {
  int M = 1;
  double R = 1.0;
  double P = 1.0;
  double rho = 0.0;

  void validate() const {
    if (M < 1) throw config_error("SystemConfig: M must be >= 1");
    if (!(R > 0.0)) throw config_error("SystemConfig: R must be > 0");
    if (!(P > 0.0)) throw config_error("SystemConfig: P must be > 0");
    if (!(rho >= 0.0 && rho <= 1.0))
      throw config_error("SystemConfig: rho must lie in [0,1]");
  }

  bool operator==(const SystemConfig&) const = default;
};

/// Derived scalars of the delayed-feedback outage laws:
///   mu   = rho^2 / (1 - rho^2)
///   beta = (e^R - 1)/P * (mu + 1)
///   delta(gamma) = 2 * mu * gamma
struct EffectiveParams {
  double mu = 0.0;
  double beta = 0.0;
  double delta(double gamma) const { return 2.0 * mu * gamma; }
};

inline EffectiveParams effective_params(const SystemConfig& cfg) {
  cfg.validate();
  if (cfg.rho == 1.0)
    throw singular_parameter(
        "effective_params: rho = 1 is singular; use the perfect-CSIT formulas");
  double mu = cfg.rho * cfg.rho / (1.0 - cfg.rho * cfg.rho);
  double beta = (std::expm1(cfg.R) / cfg.P) * (mu + 1.0);
  return {mu, beta};
}

/// dB <-> linear SNR.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// ---------------------------------------------------------------------------
// Random streams.
// ---------------------------------------------------------------------------

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministically derived per-stream engine: stream(master, index) is
/// independent of how many workers consume the streams.
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t s = master_seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b << 1));
}

/// Box-Muller pair of standard normals from explicit 53-bit uniforms, so
/// draws are identical across standard library implementations.
struct NormalPair {
  double z1, z2;
};

inline NormalPair normal_pair(std::mt19937_64& gen) {
  double u1 = ((gen() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  double u2 = (gen() >> 11) * 0x1.0p-53;          // [0,1)
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

/// One CN(0,1) sample: independent real and imaginary parts of variance 1/2.
inline std::complex<double> complex_normal(std::mt19937_64& gen) {
  NormalPair p = normal_pair(gen);
  return {p.z1 * M_SQRT1_2, p.z2 * M_SQRT1_2};
}

}  // namespace rng

// ---------------------------------------------------------------------------
// Channel draws.
// ---------------------------------------------------------------------------

using cvector = std::vector<std::complex<double>>;

/// One realization of the delayed-feedback channel pair:
///   h = rho * h_old + sqrt(1 - rho^2) * w,  gamma = |h_old|^2.
struct ChannelDraw {
  cvector h_old;
  cvector w;
  cvector h;
  double gamma = 0.0;
};

inline void sample_channel(std::mt19937_64& gen, int M, double rho,
                           ChannelDraw& out) {
  if (M < 1) throw config_error("sample_channel: M must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw config_error("sample_channel: rho must lie in [0,1]");
  out.h_old.resize(M);
  out.w.resize(M);
  out.h.resize(M);
  const double c = std::sqrt(1.0 - rho * rho);
  double gamma = 0.0;
  for (int i = 0; i < M; ++i) {
    out.h_old[i] = rng::complex_normal(gen);
    out.w[i] = rng::complex_normal(gen);
    out.h[i] = rho * out.h_old[i] + c * out.w[i];
    gamma += std::norm(out.h_old[i]);
  }
  out.gamma = gamma;
}

inline ChannelDraw sample_channel(std::mt19937_64& gen, int M, double rho) {
  ChannelDraw d;
  sample_channel(gen, M, rho, d);
  return d;
}

/// Spatial transmission schemes with a fixed covariance shape.
enum class Scheme { uspa, bf_ic, bf_perfect };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::uspa: return "USPA";
    case Scheme::bf_ic: return "BF-IC";
    case Scheme::bf_perfect: return "BF-PERFECT";
  }
  return "?";
}

namespace detail {

inline double norm2(const cvector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

/// |u^H h|^2 with u = h_old / sqrt(gamma).
inline double feedback_mode_power(const ChannelDraw& d) {
  std::complex<double> ip{0.0, 0.0};
  for (std::size_t i = 0; i < d.h.size(); ++i)
    ip += std::conj(d.h_old[i]) * d.h[i];
  return std::norm(ip) / d.gamma;
}

}  // namespace detail

/// Mutual information log(1 + P h^H Q h) for the scheme's covariance.
inline double mutual_info(const ChannelDraw& d, double P, Scheme scheme) {
  const int M = static_cast<int>(d.h.size());
  switch (scheme) {
    case Scheme::uspa:
      return std::log1p(P * detail::norm2(d.h) / M);
    case Scheme::bf_perfect:
      return std::log1p(P * detail::norm2(d.h));
    case Scheme::bf_ic:
      if (d.gamma <= 0.0)
        throw std::domain_error("mutual_info: degenerate feedback (gamma = 0)");
      return std::log1p(P * detail::feedback_mode_power(d));
  }
  throw config_error("mutual_info: unknown scheme");
}

/// Mutual information when a fraction lambda of the power rides the feedback
/// direction and the rest splits evenly over the M-1 orthogonal modes.
inline double mutual_info_lambda(const ChannelDraw& d, double P, double lambda) {
  const int M = static_cast<int>(d.h.size());
  if (M < 2) throw config_error("mutual_info_lambda: requires M >= 2");
  if (!(lambda >= 1.0 / M - 1e-12 && lambda <= 1.0 + 1e-12))
    throw std::domain_error("mutual_info_lambda: lambda must lie in [1/M, 1]");
  if (d.gamma <= 0.0)
    throw std::domain_error("mutual_info_lambda: degenerate feedback (gamma = 0)");
  double a = detail::feedback_mode_power(d);
  double rest = std::max(detail::norm2(d.h) - a, 0.0);
  double q = lambda * a + (1.0 - lambda) / (M - 1) * rest;
  return std::log1p(P * q);
}

}  // namespace miso

#endif  // MISO_MODEL_HPP
