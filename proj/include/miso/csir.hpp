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

#ifndef MISO_CSIR_HPP
#define MISO_CSIR_HPP

#include <cmath>

#include "miso/analytic.hpp"
#include "miso/common.hpp"
#include "miso/specfun.hpp"

namespace miso {

/// Training-based CSIR: M pilot symbols with total power P_t open each
/// T-symbol block; the remaining T-M symbols carry data at power P_d per
/// symbol. P_t + P_d (T - M) = P T ties the split to the average power.
struct TrainingConfig {
  int T = 0;
  int M = 0;
  double P = 0.0;
  double P_t = 0.0;
  double P_d = 0.0;

  void validate() const {
    if (M < 1) throw config_error("TrainingConfig: M must be >= 1");
    if (T <= M) throw config_error("TrainingConfig: block length T must exceed M");
    if (!(P > 0.0 && P_t > 0.0 && P_d > 0.0))
      throw config_error("TrainingConfig: powers must be positive");
    double lhs = P_t + P_d * (T - M);
    if (std::fabs(lhs - P * T) > 1e-9 * P * T)
      throw config_error("TrainingConfig: power identity P_t + P_d(T-M) = PT violated");
  }

  /// Build from the data power; the training power absorbs the remainder.
  static TrainingConfig from_data_power(double P, int T, int M, double P_d) {
    TrainingConfig tc;
    tc.T = T;
    tc.M = M;
    tc.P = P;
    tc.P_d = P_d;
    tc.P_t = P * T - P_d * (T - M);
    tc.validate();
    return tc;
  }
};

/// Derived link quantities of the MMSE training model: estimation error
/// variance, effective feedback correlation, and the effective SNR/rate pair
/// the outage bounds are evaluated at.
struct EffectiveLink {
  double sigma_e2 = 0.0;
  double rho_e = 0.0;
  double P_prime = 0.0;
  double R_prime = 0.0;
};

inline EffectiveLink effective_link(const TrainingConfig& tc, double R, double rho) {
  tc.validate();
  if (!(R > 0.0)) throw config_error("effective_link: R must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw config_error("effective_link: rho must lie in [0,1]");
  EffectiveLink link;
  link.sigma_e2 = tc.M / (tc.P_t + tc.M);
  link.rho_e = rho * tc.P_t / (tc.P_t + tc.M);
  link.P_prime = tc.P_d * tc.P_t / (tc.P_t + tc.M * tc.P_d + tc.M);
  link.R_prime = R * tc.T / static_cast<double>(tc.T - tc.M);
  return link;
}

/// The preamble-power-equals-data-power split of the Fig. 5 comparison.
inline TrainingConfig equal_power_training(double P, int T, int M) {
  // P_d = P_t and P_t + P_d (T - M) = P T
  double pd = P * T / (T - M + 1.0);
  return TrainingConfig::from_data_power(P, T, M, pd);
}

/// Training split maximizing the effective SNR P' over the feasible data
/// powers (boundaries excluded: both ends drive P' to zero).
inline TrainingConfig optimize_training(double P, int T, int M) {
  if (T <= M) throw config_error("optimize_training: requires T > M");
  if (!(P > 0.0)) throw config_error("optimize_training: P must be > 0");
  const double pd_max = P * T / static_cast<double>(T - M);
  const double margin = 1e-9 * pd_max;
  auto neg_p_prime = [&](double pd) {
    TrainingConfig tc = TrainingConfig::from_data_power(P, T, M, pd);
    return -effective_link(tc, 1.0, 0.0).P_prime;
  };
  specfun::ScalarMin best =
      specfun::minimize_scan(neg_p_prime, margin, pd_max - margin, 65, 1e-12 * pd_max);
  return TrainingConfig::from_data_power(P, T, M, best.x);
}

/// Upper bound on USPA outage with trained CSIR: the perfect-CSIR formula at
/// the effective pair (P', R').
inline double pout_uspa_csir(const TrainingConfig& tc, double R, double rho) {
  EffectiveLink link = effective_link(tc, R, rho);
  return pout_uspa(tc.M, link.R_prime, link.P_prime);
}

/// Upper bound on BF-IC outage with trained CSIR: the delayed-feedback
/// closed form at (P', R') with the effective correlation rho_e.
inline double pout_bfic_csir(const TrainingConfig& tc, double R, double rho) {
  EffectiveLink link = effective_link(tc, R, rho);
  return pout_bfic(tc.M, link.R_prime, link.P_prime, link.rho_e);
}

}  // namespace miso

#endif  // MISO_CSIR_HPP
