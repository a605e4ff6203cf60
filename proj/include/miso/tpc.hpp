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

#ifndef MISO_TPC_HPP
#define MISO_TPC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "miso/analytic.hpp"
#include "miso/common.hpp"
#include "miso/model.hpp"
#include "miso/specfun.hpp"

namespace miso {

enum class TpcScheme { uspa, bf_ic };

inline const char* tpc_scheme_name(TpcScheme s) {
  return s == TpcScheme::uspa ? "USPA-TPC" : "BFIC-TPC";
}

/// Tabulated temporal power control function p(gamma) under the unit
/// average-power constraint E[p] = 1, together with the Lagrange constant
/// its support satisfies (the k1/k2 of the stationarity condition).
struct PowerPolicy {
  std::vector<double> gamma_grid;
  std::vector<double> p_values;
  double lagrange_constant = 0.0;
  TpcScheme scheme = TpcScheme::uspa;
  SystemConfig config;

  double p_at(double gamma) const {
    return interp_clamped(gamma_grid, p_values, gamma);
  }

  void validate() const {
    config.validate();
    if (gamma_grid.size() != p_values.size() || gamma_grid.size() < 2)
      throw config_error("PowerPolicy: bad table");
    for (std::size_t i = 0; i + 1 < gamma_grid.size(); ++i)
      if (!(gamma_grid[i] < gamma_grid[i + 1]))
        throw config_error("PowerPolicy: gamma grid must be increasing");
    for (double p : p_values)
      if (!(p >= 0.0)) throw config_error("PowerPolicy: negative power");
    if (!(lagrange_constant > 0.0))
      throw config_error("PowerPolicy: lagrange constant must be > 0");
  }
};

namespace detail {

/// Conditional outage law of one scheme: F_{nc-chi2,dof,delta(gamma)}(c/p).
struct TpcLaw {
  int dof;
  double c;   // 2*M*beta for USPA, 2*beta for BF-IC
  double mu;  // delta(gamma) = 2*mu*gamma
};

inline TpcLaw tpc_law(TpcScheme scheme, const SystemConfig& cfg) {
  EffectiveParams ep = effective_params(cfg);
  if (scheme == TpcScheme::uspa)
    return {2 * cfg.M, 2.0 * cfg.M * ep.beta, ep.mu};
  return {2, 2.0 * ep.beta, ep.mu};
}

inline double gamma_density(int M, double gamma) {
  if (gamma < 0.0) return 0.0;
  if (gamma == 0.0) return M == 1 ? 1.0 : 0.0;
  return std::exp((M - 1) * std::log(gamma) - gamma - std::lgamma(M));
}

constexpr double kTpcPowerCap = 1e3;

/// Pointwise Lagrangian problem: minimize F(c/p) + s*p over p >= 0.
/// A 64-point log-grid scan seeds golden-section refinement; p = 0 (certain
/// outage at this gamma, objective value 1) competes with the interior
/// candidate. The stationarity condition (c/p^2) f(c/p) = s holds exactly at
/// an interior optimum.
struct InnerSolution {
  double p = 0.0;
  double value = 1.0;
};

inline InnerSolution inner_power(const TpcLaw& law, double delta, double s) {
  auto objective = [&](double p) {
    return specfun::ncx2_cdf(law.dof, delta, law.c / p) + s * p;
  };
  specfun::ScalarMin best{0.0, 1.0};  // p = 0: outage with certainty
  const int n = 64;
  const double lo = std::log(1e-4), hi = std::log(kTpcPowerCap);
  int ibest = -1;
  std::vector<double> ps(n), vs(n);
  for (int i = 0; i < n; ++i) {
    ps[i] = std::exp(lo + (hi - lo) * i / (n - 1.0));
    vs[i] = objective(ps[i]);
    if (vs[i] < best.value) {
      best = {ps[i], vs[i]};
      ibest = i;
    }
  }
  if (ibest >= 0) {
    double a = ps[std::max(ibest - 1, 0)];
    double b = ps[std::min(ibest + 1, n - 1)];
    specfun::ScalarMin refined =
        specfun::minimize_scalar(objective, a, b, 1e-10 * b);
    if (refined.value < best.value) best = refined;
  }
  if (best.value >= 1.0) return {0.0, 1.0};
  return {best.x, best.value};
}

/// gamma above which the Gamma(M,1) tail mass is below ~1e-13.
inline double gamma_domain_end(int M) {
  double g = 30.0;
  while (1.0 - specfun::reg_inc_gamma(M, g) > 1e-13) g += 2.0;
  return g;
}

}  // namespace detail

/// Solve the temporal power control function for one scheme by bisecting the
/// Lagrange multiplier until E[p] = 1. The inner problem is solved as a
/// pointwise minimization (which selects the correct branch of the
/// stationarity equation and admits p = 0 outage regions); the constraint
/// integral treats the outage boundary gamma_cut explicitly so E[p] varies
/// continuously with the multiplier.
inline PowerPolicy solve_policy(TpcScheme scheme, int M, double R, double P,
                                double rho, double tol = 1e-6) {
  SystemConfig cfg{M, R, P, rho};
  cfg.validate();
  if (cfg.rho == 1.0)
    throw singular_parameter("solve_policy: requires rho < 1");
  const detail::TpcLaw law = detail::tpc_law(scheme, cfg);
  const double ghi = detail::gamma_domain_end(M);

  auto p_of = [&](double gamma, double s) {
    return detail::inner_power(law, 2.0 * law.mu * gamma, s).p;
  };
  // Interior transmission wins for all gamma above the cut: delta grows with
  // gamma, so once the interior branch beats p = 0 it keeps beating it.
  auto gamma_cut = [&](double s) {
    if (p_of(0.0, s) > 0.0) return 0.0;
    if (p_of(ghi, s) == 0.0) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = ghi;
    for (int i = 0; i < 100 && hi - lo > 1e-11 * (1.0 + hi); ++i) {
      double mid = 0.5 * (lo + hi);
      (p_of(mid, s) > 0.0 ? hi : lo) = mid;
    }
    return hi;
  };
  auto constraint = [&](double s, double& cut_out) {
    double cut = gamma_cut(s);
    cut_out = cut;
    if (!std::isfinite(cut)) return -1.0;
    double integral = specfun::integrate_finite(
        [&](double g) { return detail::gamma_density(M, g) * p_of(g, s); }, cut,
        ghi, 1e-9);
    return integral - 1.0;
  };

  double slo = 1e-8, shi = 1e3, cut = 0.0;
  double clo = constraint(slo, cut), chi = constraint(shi, cut);
  for (int tries = 0; (clo <= 0.0 || chi >= 0.0) && tries < 6; ++tries) {
    if (clo <= 0.0) {
      slo *= 1e-2;
      clo = constraint(slo, cut);
    }
    if (chi >= 0.0) {
      shi *= 1e2;
      chi = constraint(shi, cut);
    }
  }
  if (clo <= 0.0 || chi >= 0.0) {
    std::ostringstream os;
    os << "solve_policy(" << tpc_scheme_name(scheme)
       << "): multiplier bracket exhausted; C(" << slo << ")=" << clo << " C("
       << shi << ")=" << chi;
    throw solver_error(os.str());
  }
  double sbest = shi, cbest = std::fabs(chi);
  for (int it = 0; it < 80; ++it) {
    double smid = std::sqrt(slo * shi);
    double c = constraint(smid, cut);
    if (std::fabs(c) < cbest) {
      cbest = std::fabs(c);
      sbest = smid;
    }
    if (cbest <= 1e-7 || shi / slo < 1.0 + 1e-13) break;
    (c > 0.0 ? slo : shi) = smid;
  }
  if (cbest > 5e-4) {
    std::ostringstream os;
    os << "solve_policy(" << tpc_scheme_name(scheme)
       << "): constraint residual " << cbest << " at s=" << sbest
       << " (bracket [" << slo << ", " << shi << "])";
    throw solver_error(os.str());
  }
  const double s = sbest;
  const double cut_final = gamma_cut(s);

  // Tabulation grid: solver quadrature nodes plus a log-spaced consumer grid
  // plus a refinement pair straddling the outage boundary.
  std::vector<double> grid{0.0};
  const specfun::QuadratureRule& rule = specfun::gamma_laguerre_cached(128, M);
  for (double g : rule.nodes)
    if (g <= ghi) grid.push_back(g);
  for (int i = 0; i < 256; ++i)
    grid.push_back(1e-4 * std::pow(ghi / 1e-4, i / 255.0));
  if (cut_final > 0.0 && std::isfinite(cut_final)) {
    grid.push_back(cut_final * (1.0 - 1e-9));
    grid.push_back(cut_final * (1.0 + 1e-9));
    for (double f : {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.2, 0.3})
      if (cut_final * (1.0 + f) < ghi) grid.push_back(cut_final * (1.0 + f));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) {
                           return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(b));
                         }),
             grid.end());

  PowerPolicy policy;
  policy.scheme = scheme;
  policy.config = cfg;
  policy.lagrange_constant = s;
  policy.gamma_grid = grid;
  policy.p_values.reserve(grid.size());
  for (double g : grid)
    policy.p_values.push_back(g < cut_final ? 0.0 : p_of(g, s));
  policy.validate();
  (void)tol;
  return policy;
}

/// Outage of a power policy: E_gamma of the scheme's conditional outage with
/// the threshold scaled by 1/p(gamma); p = 0 regions are certain outage.
/// Integrated piecewise over the policy grid (the interpolant is linear on
/// each piece, so every panel is smooth) plus the closed-form tail.
inline double pout_tpc(const PowerPolicy& policy) {
  policy.validate();
  const detail::TpcLaw law = detail::tpc_law(policy.scheme, policy.config);
  const int M = policy.config.M;
  const auto& gs = policy.gamma_grid;
  const auto& ps = policy.p_values;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
    double a = gs[i], b = gs[i + 1];
    if (b <= a) continue;
    if (ps[i] <= 0.0 && ps[i + 1] <= 0.0) {
      total += specfun::reg_inc_gamma(M, b) - specfun::reg_inc_gamma(M, a);
      continue;
    }
    auto f = [&](double g) {
      double p = interp_clamped(gs, ps, g);
      double F = p <= 0.0 ? 1.0
                          : specfun::ncx2_cdf(law.dof, 2.0 * law.mu * g, law.c / p);
      return detail::gamma_density(M, g) * F;
    };
    total += specfun::integrate_finite(f, a, b, 1e-12 * (1.0 + b - a));
  }
  double tail_mass = 1.0 - specfun::reg_inc_gamma(M, gs.back());
  double p_end = ps.back();
  total += tail_mass * (p_end <= 0.0
                            ? 1.0
                            : specfun::ncx2_cdf(law.dof, 2.0 * law.mu * gs.back(),
                                                law.c / p_end));
  return miso::detail::clamp_probability(total, 1e-9);
}

/// Max relative deviation of the stationarity quantity (c/p^2) f(c/p) from
/// the policy's Lagrange constant over the support {p > 0}.
inline double stationarity_check(const PowerPolicy& policy) {
  policy.validate();
  const detail::TpcLaw law = detail::tpc_law(policy.scheme, policy.config);
  double worst = -1.0;
  for (std::size_t i = 0; i < policy.gamma_grid.size(); ++i) {
    double p = policy.p_values[i];
    if (p <= 1e-12) continue;
    double delta = 2.0 * law.mu * policy.gamma_grid[i];
    double lhs = law.c / (p * p) * specfun::ncx2_pdf(law.dof, delta, law.c / p);
    worst = std::max(worst, std::fabs(lhs - policy.lagrange_constant) /
                                policy.lagrange_constant);
  }
  if (worst < 0.0)
    throw solver_error("stationarity_check: policy has empty support");
  return worst;
}

/// Exact E[p] of the tabulated (piecewise-linear, clamped) policy under the
/// Gamma(M,1) measure; independent of the solver's own quadrature.
inline double policy_mean_power(const PowerPolicy& policy) {
  policy.validate();
  const int M = policy.config.M;
  const auto& gs = policy.gamma_grid;
  const auto& ps = policy.p_values;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
    double a = gs[i], b = gs[i + 1];
    if (b <= a) continue;
    double slope = (ps[i + 1] - ps[i]) / (b - a);
    double icpt = ps[i] - slope * a;
    double d0 = specfun::reg_inc_gamma(M, b) - specfun::reg_inc_gamma(M, a);
    double d1 = specfun::reg_inc_gamma(M + 1, b) - specfun::reg_inc_gamma(M + 1, a);
    total += icpt * d0 + slope * M * d1;
  }
  total += ps.back() * (1.0 - specfun::reg_inc_gamma(M, gs.back()));
  return total;
}

}  // namespace miso

#endif  // MISO_TPC_HPP
