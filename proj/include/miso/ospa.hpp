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

#ifndef MISO_OSPA_HPP
#define MISO_OSPA_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "miso/analytic.hpp"
#include "miso/common.hpp"
#include "miso/model.hpp"
#include "miso/specfun.hpp"

namespace miso {

/// Tabulated lambda_opt(gamma): the fraction of power on the feedback
/// direction as a function of feedback SNR, for one (M,R,P,rho).
struct SpatialPolicy {
  std::vector<double> gamma_grid;
  std::vector<double> lambda_values;
  SystemConfig config;

  double lambda_at(double gamma) const {
    return interp_clamped(gamma_grid, lambda_values, gamma);
  }

  void validate() const {
    config.validate();
    if (gamma_grid.size() != lambda_values.size() || gamma_grid.empty())
      throw config_error("SpatialPolicy: bad table");
    for (std::size_t i = 0; i + 1 < gamma_grid.size(); ++i)
      if (!(gamma_grid[i] < gamma_grid[i + 1]))
        throw config_error("SpatialPolicy: gamma grid must be increasing");
    const double lo = 1.0 / config.M - 1e-9;
    for (double l : lambda_values)
      if (!(l >= lo && l <= 1.0 + 1e-9))
        throw config_error("SpatialPolicy: lambda outside [1/M, 1]");
  }
};

namespace detail {

/// The conditional outage integrand lives on [0, 2*beta/lambda]; the nc-chi2
/// density factor can be a narrow spike inside that range, so the domain is
/// split around the density bulk before handing pieces to the adaptive rule.
struct GammaLambdaIntegrand {
  int M;
  double delta;
  double two_beta;
  double lambda;

  double operator()(double a) const {
    double thr = (two_beta - lambda * a) * (M - 1) / (2.0 * (1.0 - lambda));
    if (thr <= 0.0) return 0.0;
    return specfun::ncx2_pdf(2, delta, a) * specfun::reg_inc_gamma(M - 1, thr);
  }
};

}  // namespace detail

/// Conditional outage Pr(lambda*A + (1-lambda)/(M-1)*B < 2*beta) at feedback
/// SNR gamma, with A ~ nc-chi2(2, 2*mu*gamma) and B ~ chi2(2(M-1)).
/// At lambda = 1 the convolution degenerates to the BF-IC conditional law.
inline double pout_gamma_lambda(int M, double R, double P, double rho,
                                double gamma, double lambda) {
  if (M < 2) throw config_error("pout_gamma_lambda: requires M >= 2");
  if (!(gamma >= 0.0)) throw std::domain_error("pout_gamma_lambda: gamma >= 0");
  if (!(lambda >= 1.0 / M - 1e-12 && lambda <= 1.0 + 1e-12))
    throw std::domain_error("pout_gamma_lambda: lambda must lie in [1/M, 1]");
  EffectiveParams ep = effective_params(SystemConfig{M, R, P, rho});
  const double delta = ep.delta(gamma);
  const double two_beta = 2.0 * ep.beta;
  if (lambda >= 1.0 - 1e-9) return specfun::ncx2_cdf(2, delta, two_beta);

  const double upper = two_beta / lambda;
  detail::GammaLambdaIntegrand f{M, delta, two_beta, lambda};

  // split points around the density bulk
  const double mode = delta + 2.0;
  const double spread = 8.0 * std::sqrt(2.0 * (2.0 + 2.0 * delta));
  std::vector<double> cuts{0.0};
  for (double c : {mode - spread, mode + spread})
    if (c > 0.0 && c < upper) cuts.push_back(c);
  cuts.push_back(upper);
  std::sort(cuts.begin(), cuts.end());

  // probe the magnitude so the absolute tolerance tracks the value scale
  double peak = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    for (int j = 0; j <= 4; ++j)
      peak = std::max(peak, f(cuts[i] + (cuts[i + 1] - cuts[i]) * j / 4.0));
  if (peak == 0.0) return 0.0;
  const double tol = std::max(peak * upper * 1e-9, 1e-280);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += specfun::integrate_finite(f, cuts[i], cuts[i + 1], tol);
  return miso::detail::clamp_probability(total, 1e-9);
}

/// argmin over [1/M, 1] of the conditional outage, found by a 33-point scan
/// seeding golden-section refinement; unimodality in lambda is not assumed.
/// Boundary minima are legitimate results.
inline double lambda_opt(int M, double R, double P, double rho, double gamma,
                         double tol = 1e-6) {
  auto objective = [&](double lam) {
    return pout_gamma_lambda(M, R, P, rho, gamma, lam);
  };
  return specfun::minimize_scan(objective, 1.0 / M, 1.0, 33, tol).x;
}

/// Value and absolute-integrand scale of the first-order optimality integral
/// for lambda. Interior minima of the conditional outage drive value/scale
/// to ~0; its sign is the sign of d(outage)/d(lambda). The integrand is
/// scaled by exp(-(M-1)*beta/(1-lambda)) to stay finite for lambda near 1;
/// the zero set and the value/scale ratio are unaffected.
struct StationarityResidual {
  double value = 0.0;
  double scale = 0.0;
};

inline StationarityResidual stationarity_residual(int M, double R, double P,
                                                  double rho, double gamma,
                                                  double lambda) {
  if (M < 2) throw config_error("stationarity_residual: requires M >= 2");
  if (!(lambda > 1.0 / M && lambda < 1.0))
    throw std::domain_error(
        "stationarity_residual: lambda must lie strictly inside (1/M, 1)");
  if (!(gamma >= 0.0)) throw std::domain_error("stationarity_residual: gamma >= 0");
  EffectiveParams ep = effective_params(SystemConfig{M, R, P, rho});
  const double delta = ep.delta(gamma);
  const double two_beta = 2.0 * ep.beta;
  const double upper = two_beta / lambda;
  const double expo_max = (M - 1) * ep.beta / (1.0 - lambda);

  auto integrand = [&](double a) {
    double expo = (M - 1) * lambda * a / (2.0 * (1.0 - lambda)) - expo_max;
    double pw = M == 2 ? 1.0 : std::pow(two_beta - lambda * a, M - 2);
    return specfun::ncx2_pdf(2, delta, a) * std::exp(expo) * pw * (two_beta - a);
  };
  double probe = 0.0;
  for (int j = 0; j <= 16; ++j)
    probe = std::max(probe, std::fabs(integrand(upper * j / 16.0)));
  const double tol = std::max(probe * upper * 1e-10, 1e-280);
  StationarityResidual r;
  r.value = specfun::integrate_finite(integrand, 0.0, upper, tol);
  r.scale = specfun::integrate_finite(
      [&](double a) { return std::fabs(integrand(a)); }, 0.0, upper, tol);
  return r;
}

/// Marginal OSPA outage: E_gamma[P_out(gamma, lambda_opt(gamma))], together
/// with the lambda table on the quadrature nodes actually used (plus
/// gamma = 0, whose value pins the policy's left end).
struct OspaResult {
  double pout = 0.0;
  SpatialPolicy policy;
};

inline OspaResult pout_ospa(int M, double R, double P, double rho,
                            double tol = 1e-6) {
  SystemConfig cfg{M, R, P, rho};
  cfg.validate();
  if (cfg.rho == 1.0)
    throw singular_parameter("pout_ospa: rho = 1 reduces to pout_bf_perfect");
  std::map<double, double> lam_at;  // gamma -> lambda_opt, across all orders
  auto g = [&](double gamma) {
    auto it = lam_at.find(gamma);
    if (it == lam_at.end())
      it = lam_at.emplace(gamma, lambda_opt(M, R, P, rho, gamma)).first;
    return pout_gamma_lambda(M, R, P, rho, gamma, it->second);
  };
  specfun::GammaExpectation e = specfun::gamma_expectation_detailed(M, g, tol);

  OspaResult result;
  result.pout = miso::detail::clamp_probability(e.value, 1e-9);
  result.policy.config = cfg;
  const specfun::QuadratureRule& rule = specfun::gamma_laguerre_cached(e.order, M);
  result.policy.gamma_grid.reserve(rule.nodes.size() + 1);
  result.policy.lambda_values.reserve(rule.nodes.size() + 1);
  result.policy.gamma_grid.push_back(0.0);
  result.policy.lambda_values.push_back(lambda_opt(M, R, P, rho, 0.0));
  for (double gamma : rule.nodes) {
    result.policy.gamma_grid.push_back(gamma);
    result.policy.lambda_values.push_back(lam_at.at(gamma));
  }
  result.policy.validate();
  return result;
}

}  // namespace miso

#endif  // MISO_OSPA_HPP
