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

#ifndef MISO_MC_HPP
#define MISO_MC_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "miso/common.hpp"
#include "miso/model.hpp"
#include "miso/ospa.hpp"
#include "miso/tpc.hpp"

namespace miso {

struct McConfig {
  long long samples = 0;
  std::uint64_t master_seed = 0;
  int workers = 1;

  void validate() const {
    if (samples < 1000)
      throw config_error("McConfig: need at least 10^3 samples for an estimate");
    if (workers < 1 || workers > 1024)
      throw config_error("McConfig: workers must lie in [1, 1024]");
  }
};

/// Monte Carlo outage estimate with a normal-approximation 95% interval.
/// Estimates with fewer than 50 observed outage events are flagged: their
/// interval is not meaningful.
struct OutageEstimate {
  double p_hat = 0.0;
  double half_width_95 = 0.0;
  long long samples = 0;
  std::uint64_t master_seed = 0;
  long long events = 0;
  bool low_confidence = false;
};

namespace detail {

/// Samples are split into fixed-size shards, each with its own random stream
/// derived from (master_seed, shard index). Workers drain a shard queue and
/// the per-shard outage counts are reduced by integer summation, so the
/// estimate is bit-identical for any worker count.
template <typename ShardFn>
OutageEstimate run_shards(const McConfig& mc, const ShardFn& shard_fn) {
  mc.validate();
  constexpr long long kShardSize = 1LL << 16;
  const long long nshards = (mc.samples + kShardSize - 1) / kShardSize;
  std::vector<long long> counts(static_cast<std::size_t>(nshards), 0);
  std::atomic<long long> next{0};
  auto worker = [&]() {
    for (;;) {
      long long i = next.fetch_add(1);
      if (i >= nshards) return;
      long long n = std::min(kShardSize, mc.samples - i * kShardSize);
      std::mt19937_64 gen = rng::make_stream(mc.master_seed, static_cast<std::uint64_t>(i));
      counts[static_cast<std::size_t>(i)] = shard_fn(gen, n);
    }
  };
  int nthreads = static_cast<int>(std::min<long long>(mc.workers, nshards));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  long long events = 0;
  for (long long c : counts) events += c;

  OutageEstimate est;
  est.samples = mc.samples;
  est.master_seed = mc.master_seed;
  est.events = events;
  est.p_hat = static_cast<double>(events) / static_cast<double>(mc.samples);
  est.half_width_95 =
      1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(mc.samples));
  est.low_confidence = events < 50;
  return est;
}

}  // namespace detail

/// Outage estimate for a fixed spatial scheme over draws of the delayed
/// feedback channel pair.
inline OutageEstimate simulate(Scheme scheme, const SystemConfig& cfg,
                               const McConfig& mc) {
  cfg.validate();
  return detail::run_shards(mc, [&](std::mt19937_64& gen, long long n) {
    ChannelDraw d;
    long long events = 0;
    for (long long i = 0; i < n; ++i) {
      do {
        sample_channel(gen, cfg.M, cfg.rho, d);
      } while (scheme == Scheme::bf_ic && d.gamma <= 0.0);
      if (mutual_info(d, cfg.P, scheme) < cfg.R) ++events;
    }
    return events;
  });
}

/// Outage estimate under a spatial power-fraction policy; lambda is read at
/// the draw's feedback SNR by the shared clamped linear interpolation.
inline OutageEstimate simulate(const SpatialPolicy& policy, const SystemConfig& cfg,
                               const McConfig& mc) {
  policy.validate();
  if (!(policy.config == cfg))
    throw config_error("simulate: SpatialPolicy config does not match");
  return detail::run_shards(mc, [&](std::mt19937_64& gen, long long n) {
    ChannelDraw d;
    long long events = 0;
    for (long long i = 0; i < n; ++i) {
      do {
        sample_channel(gen, cfg.M, cfg.rho, d);
      } while (d.gamma <= 0.0);
      double lam = policy.lambda_at(d.gamma);
      if (mutual_info_lambda(d, cfg.P, lam) < cfg.R) ++events;
    }
    return events;
  });
}

/// Outage estimate under a temporal power policy: effective power P*p(gamma)
/// with the policy's spatial scheme; p = 0 is certain outage.
inline OutageEstimate simulate(const PowerPolicy& policy, const SystemConfig& cfg,
                               const McConfig& mc) {
  policy.validate();
  if (!(policy.config == cfg))
    throw config_error("simulate: PowerPolicy config does not match");
  const Scheme spatial =
      policy.scheme == TpcScheme::uspa ? Scheme::uspa : Scheme::bf_ic;
  return detail::run_shards(mc, [&](std::mt19937_64& gen, long long n) {
    ChannelDraw d;
    long long events = 0;
    for (long long i = 0; i < n; ++i) {
      do {
        sample_channel(gen, cfg.M, cfg.rho, d);
      } while (spatial == Scheme::bf_ic && d.gamma <= 0.0);
      double p = policy.p_at(d.gamma);
      if (p <= 0.0 || mutual_info(d, cfg.P * p, spatial) < cfg.R) ++events;
    }
    return events;
  });
}

/// Conditional-law estimate at fixed feedback SNR: draws A ~ nc-chi2(2,delta)
/// and B ~ chi2(2(M-1)) directly and thresholds xi = lambda A + (1-lambda)/(M-1) B
/// against 2*beta/p_scale. Validates the conditional outage laws without
/// going through the vector channel.
inline OutageEstimate simulate_conditional(const SystemConfig& cfg, double gamma,
                                           double lambda, const McConfig& mc,
                                           double p_scale = 1.0) {
  cfg.validate();
  if (!(gamma >= 0.0)) throw config_error("simulate_conditional: gamma >= 0");
  if (cfg.M == 1 && std::fabs(lambda - 1.0) > 1e-12)
    throw config_error("simulate_conditional: M = 1 forces lambda = 1");
  if (!(lambda >= 1.0 / cfg.M - 1e-12 && lambda <= 1.0 + 1e-12))
    throw config_error("simulate_conditional: lambda outside [1/M, 1]");
  if (!(p_scale > 0.0)) throw config_error("simulate_conditional: p_scale > 0");
  EffectiveParams ep = effective_params(cfg);
  const double sqrt_delta = std::sqrt(ep.delta(gamma));
  const double threshold = 2.0 * ep.beta / p_scale;
  const double b_coeff = cfg.M > 1 ? (1.0 - lambda) / (cfg.M - 1) : 0.0;
  const int b_terms = cfg.M - 1;
  return detail::run_shards(mc, [&](std::mt19937_64& gen, long long n) {
    long long events = 0;
    for (long long i = 0; i < n; ++i) {
      rng::NormalPair z = rng::normal_pair(gen);
      double a = (z.z1 + sqrt_delta) * (z.z1 + sqrt_delta) + z.z2 * z.z2;
      double b = 0.0;
      for (int j = 0; j < b_terms; ++j) {
        rng::NormalPair zb = rng::normal_pair(gen);
        b += zb.z1 * zb.z1 + zb.z2 * zb.z2;
      }
      if (lambda * a + b_coeff * b < threshold) ++events;
    }
    return events;
  });
}

}  // namespace miso

#endif  // MISO_MC_HPP
