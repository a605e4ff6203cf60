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

#ifndef MISO_ANALYTIC_HPP
#define MISO_ANALYTIC_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "miso/common.hpp"
#include "miso/model.hpp"
#include "miso/specfun.hpp"

namespace miso {

// ---------------------------------------------------------------------------
// Short-term-constraint closed forms.
// ---------------------------------------------------------------------------

/// Outage of uniform spatial power allocation: Gamma_M((e^R - 1)/(P/M)).
inline double pout_uspa(int M, double R, double P) {
  return specfun::reg_inc_gamma(M, std::expm1(R) * M / P);
}

/// Outage of beamforming with perfect CSIT: Gamma_M((e^R - 1)/P).
inline double pout_bf_perfect(int M, double R, double P) {
  return specfun::reg_inc_gamma(M, std::expm1(R) / P);
}

/// Outage of beamforming along the delayed CSIT direction. The weighted
/// average of perfect-CSIT outages of order 1..M; the weights
/// C(M-1,i) mu^i / (1+mu)^(M-1) are evaluated as the Binomial(M-1, rho^2)
/// pmf, which is exact in the rho -> 0 and rho -> 1 limits and stable for
/// rho near 1 where mu overflows its naive form.
inline double pout_bfic(int M, double R, double P, double rho) {
  SystemConfig{M, R, P, rho}.validate();
  if (rho == 1.0) return pout_bf_perfect(M, R, P);
  const double x = std::expm1(R) / P;
  const double q = rho * rho;
  double out = 0.0;
  for (int i = 0; i < M; ++i) {
    double w = miso::detail::binom(M - 1, i) * std::pow(q, i) *
               std::pow(1.0 - q, M - 1 - i);
    out += w * specfun::reg_inc_gamma(i + 1, x);
  }
  return miso::detail::clamp_probability(out);
}

/// Conditional BF-IC outage at feedback SNR gamma: F_{nc-chi2,2,2*mu*gamma}(2*beta).
inline double pout_bfic_given_gamma(int M, double R, double P, double rho,
                                    double gamma) {
  if (!(gamma >= 0.0)) throw std::domain_error("pout_bfic_given_gamma: gamma >= 0");
  EffectiveParams ep = effective_params(SystemConfig{M, R, P, rho});
  return specfun::ncx2_cdf(2, ep.delta(gamma), 2.0 * ep.beta);
}

// ---------------------------------------------------------------------------
// Outage curves and slope fits.
// ---------------------------------------------------------------------------

/// One outage-vs-SNR curve; same length sequences, snr_db strictly increasing.
struct OutageCurve {
  std::vector<double> snr_db;
  std::vector<double> pout;
  std::string scheme;
  int M = 1;
  double R = 1.0;
  double rho = 0.0;

  void validate() const {
    if (snr_db.size() != pout.size())
      throw config_error("OutageCurve: sequence lengths differ");
    for (std::size_t i = 0; i + 1 < snr_db.size(); ++i)
      if (!(snr_db[i] < snr_db[i + 1]))
        throw config_error("OutageCurve: snr_db must be strictly increasing");
    for (double p : pout)
      if (!(p >= 0.0 && p <= 1.0))
        throw config_error("OutageCurve: pout outside [0,1]");
  }
};

/// Least-squares slope of -log10(pout) against log10(SNR) over a dB window.
/// Needs at least three curve points inside the window.
inline double diversity_slope(const OutageCurve& curve, double lo_db, double hi_db) {
  curve.validate();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
    if (curve.snr_db[i] >= lo_db - 1e-9 && curve.snr_db[i] <= hi_db + 1e-9) {
      if (!(curve.pout[i] > 0.0))
        throw std::range_error("diversity_slope: zero outage inside window");
      xs.push_back(curve.snr_db[i] / 10.0);  // log10 of linear SNR
      ys.push_back(-std::log10(curve.pout[i]));
    }
  }
  if (xs.size() < 3)
    throw std::range_error("diversity_slope: fewer than 3 points in window");
  double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Cross-over SNR between USPA and BF-IC.
// ---------------------------------------------------------------------------

struct CrossoverResult {
  double snr_db = 0.0;
  int sign_changes = 0;  // > 1 means the paper's uniqueness assumption failed
};

/// Cross-over not found inside the search window.
class no_crossover : public std::runtime_error {
 public:
  no_crossover(const std::string& what, double diff_lo, double diff_hi)
      : std::runtime_error(what), diff_at_lo(diff_lo), diff_at_hi(diff_hi) {}
  double diff_at_lo;
  double diff_at_hi;
};

/// Smallest SNR (dB) in [lo_db, hi_db] where pout_uspa - pout_bfic changes
/// sign; BF-IC is the better scheme below it. The scan works on the log10
/// outage difference and ignores leading ties where both probabilities
/// saturate at 1 in double precision.
inline CrossoverResult crossover_snr(int M, double R, double rho,
                                     double lo_db = -10.0, double hi_db = 60.0,
                                     double scan_step_db = 0.25) {
  if (M < 2) throw config_error("crossover_snr: requires M >= 2");
  if (!(rho > 0.0 && rho < 1.0))
    throw config_error("crossover_snr: requires 0 < rho < 1");
  auto diff = [&](double snr_db) {
    double P = db_to_linear(snr_db);
    double pu = pout_uspa(M, R, P);
    double pb = pout_bfic(M, R, P, rho);
    if (pu <= 0.0 || pb <= 0.0) return 0.0;  // below double-precision support
    return std::log10(pu) - std::log10(pb);
  };
  int last_sign = 0;
  double last_x = lo_db;
  std::vector<std::pair<double, double>> brackets;
  for (double x = lo_db; x <= hi_db + 1e-9; x += scan_step_db) {
    double v = diff(x);
    int s = v == 0.0 ? 0 : (v > 0.0 ? 1 : -1);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) brackets.emplace_back(last_x, x);
      last_sign = s;
      last_x = x;
    }
  }
  if (brackets.empty()) {
    std::ostringstream os;
    os << "crossover_snr: no sign change in [" << lo_db << ", " << hi_db
       << "] dB for M=" << M << " rho=" << rho;
    throw no_crossover(os.str(), diff(lo_db), diff(hi_db));
  }
  double root = specfun::find_root(diff, brackets.front().first,
                                   brackets.front().second, 1e-9);
  return {root, static_cast<int>(brackets.size())};
}

}  // namespace miso

#endif  // MISO_ANALYTIC_HPP
