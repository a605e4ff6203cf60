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

#ifndef MISO_SPECFUN_HPP
#define MISO_SPECFUN_HPP

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "miso/common.hpp"

namespace miso::specfun {

namespace detail {

/// Kahan-compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

/// log of the Poisson pmf with mean lam at k.
inline double log_poisson_pmf(double k, double lam) {
  if (lam == 0.0) return k == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -lam + k * std::log(lam) - std::lgamma(k + 1.0);
}

/// Continued fraction for the regularized upper incomplete gamma Q(a,x),
/// valid and fast for x >= a+1 (modified Lentz).
inline double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 20000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= 1e-16)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  throw numeric_error("gamma_q_contfrac: no convergence at a=" +
                      std::to_string(a) + " x=" + std::to_string(x));
}

/// log of the regularized lower incomplete gamma P(a,x); a > 0, x >= 0.
/// Series in log space below a+1, complement of the continued fraction above.
inline double log_reg_gamma_p(double a, double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x < a + 1.0) {
    double sum = 1.0, term = 1.0;
    for (int n = 1; n <= 20000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (term < sum * 1e-17)
        return std::log(sum) + (-x + a * std::log(x) - std::lgamma(a + 1.0));
    }
    throw numeric_error("log_reg_gamma_p: series stalled at a=" +
                        std::to_string(a) + " x=" + std::to_string(x));
  }
  return std::log1p(-gamma_q_contfrac(a, x));
}

}  // namespace detail

/// Regularized lower incomplete gamma Gamma_m(x) = P(m,x) for integer order.
/// Series below m+1, continued fraction above, both assembled in log space.
inline double reg_inc_gamma(int m, double x) {
  if (m < 1) throw std::domain_error("reg_inc_gamma: order m must be >= 1");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("reg_inc_gamma: x must be finite and >= 0");
  if (x == 0.0) return 0.0;
  double a = static_cast<double>(m);
  if (x < a + 1.0) return std::exp(detail::log_reg_gamma_p(a, x));
  return miso::detail::clamp_probability(1.0 - detail::gamma_q_contfrac(a, x));
}

namespace detail {

inline void validate_ncx2_args(int dof, double delta, double y, const char* who) {
  if (dof < 2 || dof % 2 != 0)
    throw std::domain_error(std::string(who) + ": dof must be a positive even integer");
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::domain_error(std::string(who) + ": delta must be finite and >= 0");
  if (!(y >= 0.0) || !std::isfinite(y))
    throw std::domain_error(std::string(who) + ": y must be finite and >= 0");
}

/// Integer ternary search for the argmax of a concave sequence on [lo,hi].
template <typename F>
long long argmax_concave(long long lo, long long hi, F&& g) {
  while (hi - lo > 2) {
    long long m1 = lo + (hi - lo) / 3;
    long long m2 = hi - (hi - lo) / 3;
    if (g(m1) < g(m2))
      lo = m1 + 1;
    else
      hi = m2;
  }
  long long best = lo;
  double gb = g(lo);
  for (long long k = lo + 1; k <= hi; ++k) {
    double v = g(k);
    if (v > gb) { gb = v; best = k; }
  }
  return best;
}

}  // namespace detail

/// CDF of the noncentral chi-square law with even dof and noncentrality
/// delta, evaluated through the Poisson mixture of central chi-square CDFs.
/// The sum starts at the argmax of the combined term (Poisson weight times
/// incomplete gamma) and expands outward until both running terms fall below
/// 1e-16 of the accumulated sum and the geometric bound on the omitted
/// Poisson mass is below 1e-14 of it. Anchoring at the combined-term peak
/// rather than the Poisson mode keeps far-left-tail values (down to ~1e-260)
/// accurate in the relative sense.
inline double ncx2_cdf(int dof, double delta, double y) {
  detail::validate_ncx2_args(dof, delta, y, "ncx2_cdf");
  const int m = dof / 2;
  const double x = y / 2.0;
  const double lam = delta / 2.0;
  if (x == 0.0) return 0.0;
  if (lam == 0.0) return reg_inc_gamma(m, x);

  const double mean = dof + delta;
  const double sd = std::sqrt(2.0 * (dof + 2.0 * delta));
  if (y > mean + 60.0 * sd) return 1.0;
  if (y < mean - 60.0 * sd) return 0.0;

  const long long khi =
      static_cast<long long>(std::ceil(lam + 60.0 * std::sqrt(lam + 1.0) + 60.0));
  auto logterm = [&](long long k) {
    return detail::log_poisson_pmf(static_cast<double>(k), lam) +
           detail::log_reg_gamma_p(m + static_cast<double>(k), x);
  };
  const long long kstar = detail::argmax_concave(0, khi, logterm);
  if (logterm(kstar) < -600.0) return 0.0;  // below meaningful magnitude

  const double astar = m + static_cast<double>(kstar);
  const double p0 = std::exp(detail::log_reg_gamma_p(astar, x));
  const double w0 = std::exp(detail::log_poisson_pmf(static_cast<double>(kstar), lam));
  const double t0 = std::exp(-x + astar * std::log(x) - std::lgamma(astar + 1.0));

  detail::KahanSum acc;
  acc.add(w0 * p0);

  // upward in k: P decreases by the density increment, weight by lam/k.
  // The subtraction recurrence loses all relative accuracy once P has
  // decayed far below its start; from there each remaining term is
  // evaluated fresh in log space (they die off double-exponentially, so
  // only a handful are needed).
  {
    double w = w0, p = p0, t = t0;
    for (long long k = kstar + 1; k <= khi + 8; ++k) {
      p = std::max(p - t, 0.0);
      double noise = DBL_EPSILON * p0 * static_cast<double>(k - kstar + 1);
      if (p <= noise || w * (lam / static_cast<double>(k)) * noise > 1e-14 * acc.sum) {
        int below = 0;
        for (long long kk = k; kk <= khi + 8; ++kk) {
          double term = std::exp(logterm(kk));
          acc.add(term);
          if (term < 1e-17 * acc.sum) {
            if (++below >= 2) break;  // concave log-terms: geometric decay
          } else {
            below = 0;
          }
        }
        break;
      }
      t *= x / (m + static_cast<double>(k));
      w *= lam / static_cast<double>(k);
      double term = w * p;
      acc.add(term);
      double r = lam / static_cast<double>(k + 1);
      if (r < 1.0 && term * r / (1.0 - r) < 1e-16 * acc.sum && term < 1e-16 * acc.sum)
        break;
    }
  }
  // downward in k: P grows by the density increment, weight by k/lam.
  {
    double w = w0, p = p0;
    double t = t0 * astar / x;  // density increment at astar-1
    for (long long k = kstar - 1; k >= 0; --k) {
      w *= static_cast<double>(k + 1) / lam;
      p = std::min(p + t, 1.0);
      t *= (m + static_cast<double>(k)) / x;
      double term = w * p;
      acc.add(term);
      double r = static_cast<double>(k) / lam;
      if (r < 1.0 && term * r / (1.0 - r) < 1e-16 * acc.sum && term < 1e-16 * acc.sum)
        break;
    }
  }
  return miso::detail::clamp_probability(acc.sum);
}

/// Density of the same law, as the Poisson mixture of central chi-square
/// densities. Accumulated in units of the peak term so deep-tail values stay
/// relatively accurate down to the underflow limit of exp.
inline double ncx2_pdf(int dof, double delta, double y) {
  detail::validate_ncx2_args(dof, delta, y, "ncx2_pdf");
  const int m = dof / 2;
  const double x = y / 2.0;
  const double lam = delta / 2.0;
  if (y == 0.0) return m == 1 ? 0.5 * std::exp(-lam) : 0.0;
  if (lam == 0.0)
    return 0.5 * std::exp(detail::log_poisson_pmf(m - 1.0, x));

  const long long khi =
      static_cast<long long>(std::ceil(lam + 60.0 * std::sqrt(lam + 1.0) + 60.0));
  auto logterm = [&](long long k) {
    return detail::log_poisson_pmf(static_cast<double>(k), lam) +
           detail::log_poisson_pmf(m - 1.0 + static_cast<double>(k), x);
  };
  const long long kstar = detail::argmax_concave(0, khi, logterm);
  const double gstar = logterm(kstar);
  if (gstar - std::log(2.0) < -745.0) return 0.0;

  detail::KahanSum acc;
  acc.add(1.0);
  {
    double t = 1.0;
    for (long long k = kstar + 1; k <= khi + 8; ++k) {
      t *= (lam / static_cast<double>(k)) * (x / (m - 1.0 + static_cast<double>(k)));
      acc.add(t);
      double r = (lam / static_cast<double>(k + 1)) * (x / (m + static_cast<double>(k)));
      if (r < 1.0 && t * r / (1.0 - r) < 1e-17 * acc.sum) break;
    }
  }
  {
    double t = 1.0;
    for (long long k = kstar - 1; k >= 0; --k) {
      t *= (static_cast<double>(k + 1) / lam) * ((m + static_cast<double>(k)) / x);
      acc.add(t);
      if (t < 1e-17 * acc.sum) break;
    }
  }
  return 0.5 * std::exp(gstar) * acc.sum;
}

// ---------------------------------------------------------------------------
// Gaussian quadrature via the Golub-Welsch construction.
// ---------------------------------------------------------------------------

namespace detail {

/// Symmetric tridiagonal QL with implicit shifts; diagonalizes (d,e) and
/// applies the accumulated rotations to the single vector z (the first row
/// of the identity), which is all the Golub-Welsch weights need.
inline void imtqlx(std::vector<double>& d, std::vector<double>& e,
                   std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int mm;
    for (;;) {
      for (mm = l; mm < n - 1; ++mm) {
        double dd = std::fabs(d[mm]) + std::fabs(d[mm + 1]);
        if (std::fabs(e[mm]) <= DBL_EPSILON * dd) break;
      }
      if (mm == l) break;
      if (++iter > 50)
        throw numeric_error("imtqlx: QL iteration failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = mm - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {  // recover from underflow
          d[i + 1] -= p;
          e[mm] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        double zi = z[i + 1];
        z[i + 1] = s * z[i] + c * zi;
        z[i] = c * z[i] - s * zi;
      }
      if (!underflow) {
        d[l] -= p;
        e[l] = g;
        e[mm] = 0.0;
      }
    }
  }
  // sort ascending, carrying z along
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n), zs(n);
  for (int i = 0; i < n; ++i) {
    ds[i] = d[idx[i]];
    zs[i] = z[idx[i]];
  }
  d.swap(ds);
  z.swap(zs);
}

}  // namespace detail

/// A Gaussian rule against either the normalized Gamma(M,1) density on
/// [0,inf) (generalized Laguerre, shape alpha = M-1) or the uniform weight
/// on a finite interval (Legendre). Weights are strictly positive and nodes
/// strictly increasing; nodes whose weights underflow double precision carry
/// no information and are dropped at construction.
struct QuadratureRule {
  enum class Kind { laguerre_gamma, legendre };

  std::vector<double> nodes;
  std::vector<double> weights;
  Kind kind = Kind::laguerre_gamma;
  double alpha = 0.0;  // Laguerre shape (= M-1)

  template <typename F>
  double apply(F&& f) const {
    detail::KahanSum acc;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc.add(weights[i] * f(nodes[i]));
    return acc.sum;
  }

  /// Rule of the given order for E[g(X)], X ~ Gamma(M,1).
  static QuadratureRule gamma_laguerre(int order, int M) {
    if (order < 1 || M < 1)
      throw std::domain_error("gamma_laguerre: order and M must be >= 1");
    const double a = static_cast<double>(M - 1);
    std::vector<double> d(order), e(order, 0.0), z(order, 0.0);
    for (int i = 0; i < order; ++i) d[i] = 2.0 * i + a + 1.0;
    for (int i = 0; i + 1 < order; ++i)
      e[i] = std::sqrt((i + 1.0) * (i + 1.0 + a));
    z[0] = 1.0;
    detail::imtqlx(d, e, z);
    QuadratureRule rule;
    rule.kind = Kind::laguerre_gamma;
    rule.alpha = a;
    rule.nodes.reserve(order);
    rule.weights.reserve(order);
    for (int i = 0; i < order; ++i) {
      double w = z[i] * z[i];
      if (w >= DBL_MIN) {  // drop nodes whose weight underflows
        rule.nodes.push_back(d[i]);
        rule.weights.push_back(w);
      }
    }
    return rule;
  }

  /// Classic Gauss-Legendre rule on [a, b].
  static QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    std::vector<double> d(order, 0.0), e(order, 0.0), z(order, 0.0);
    for (int j = 1; j < order; ++j)
      e[j - 1] = j / std::sqrt(4.0 * j * j - 1.0);
    z[0] = 1.0;
    detail::imtqlx(d, e, z);
    QuadratureRule rule;
    rule.kind = Kind::legendre;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
      rule.nodes[i] = mid + half * d[i];
      rule.weights[i] = 2.0 * z[i] * z[i] * half;
    }
    return rule;
  }
};

/// Shared cache of Gamma(M,1) rules; rules are immutable once built.
inline const QuadratureRule& gamma_laguerre_cached(int order, int M) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(order, M);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto rule = std::make_unique<QuadratureRule>(QuadratureRule::gamma_laguerre(order, M));
    it = cache.emplace(key, std::move(rule)).first;
  }
  return *it->second;
}

// ---------------------------------------------------------------------------
// Adaptive finite-interval integration (interval-halving Simpson).
// ---------------------------------------------------------------------------

namespace detail {

template <typename F>
double eval_checked(F&& f, double t) {
  double v = f(t);
  if (!std::isfinite(v))
    throw numeric_error("integrate_finite: non-finite integrand value at t=" +
                        std::to_string(t));
  return v;
}

template <typename F>
double simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = eval_checked(f, lm), frm = eval_checked(f, rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson estimate of the integral of f over [a,b] with absolute
/// error target tol on smooth integrands.
template <typename F>
double integrate_finite(F&& f, double a, double b, double tol) {
  if (!(a <= b)) throw std::domain_error("integrate_finite: requires a <= b");
  if (!(tol > 0.0)) throw std::domain_error("integrate_finite: tol must be > 0");
  if (a == b) return 0.0;
  double fa = detail::eval_checked(f, a);
  double fb = detail::eval_checked(f, b);
  double fm = detail::eval_checked(f, 0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

// ---------------------------------------------------------------------------
// Expectation under the Gamma(M,1) feedback-SNR law.
// ---------------------------------------------------------------------------

struct GammaExpectation {
  double value = 0.0;
  int order = 0;  // order of the accepted rule
};

/// E[g(X)] for X ~ Gamma(M,1) by generalized-Laguerre rules of doubling
/// order. Acceptance requires the last two doublings to agree: the final one
/// within tol (scaled by max(1,|I|)) and the one before within 10x of that,
/// which rejects the spurious plateaus low orders produce when g varies on a
/// scale much finer than the node spacing.
template <typename F>
GammaExpectation gamma_expectation_detailed(int M, F&& g, double tol) {
  if (M < 1) throw std::domain_error("gamma_expectation: M must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("gamma_expectation: tol must be > 0");
  constexpr int kMaxOrder = 4096;
  double prev1 = std::numeric_limits<double>::quiet_NaN();
  double prev2 = std::numeric_limits<double>::quiet_NaN();
  for (int order = 32; order <= kMaxOrder; order *= 2) {
    const QuadratureRule& rule = gamma_laguerre_cached(order, M);
    double value = rule.apply(g);
    if (!std::isfinite(value))
      throw numeric_error("gamma_expectation: non-finite estimate at order " +
                          std::to_string(order));
    if (order >= 128) {
      double scale = tol * std::max(1.0, std::fabs(value));
      if (std::fabs(value - prev1) <= scale && std::fabs(prev1 - prev2) <= 10.0 * scale)
        return {value, order};
    }
    prev2 = prev1;
    prev1 = value;
  }
  std::ostringstream os;
  os << "gamma_expectation: no convergence up to order " << kMaxOrder
     << " (last estimates " << prev2 << ", " << prev1 << ", tol " << tol << ")";
  throw numeric_error(os.str());
}

template <typename F>
double gamma_expectation(int M, F&& g, double tol) {
  return gamma_expectation_detailed(M, std::forward<F>(g), tol).value;
}

// ---------------------------------------------------------------------------
// Bracketing root finder and scalar minimization.
// ---------------------------------------------------------------------------

/// Bracketing root search (bisection with a secant step whenever it lands
/// safely inside the bracket). Requires a sign change on [lo,hi].
template <typename F>
double find_root(F&& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw std::domain_error("find_root: requires lo <= hi");
  double flo = f(lo), fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw numeric_error("find_root: non-finite endpoint value");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    std::ostringstream os;
    os << "find_root: no sign change on [" << lo << ", " << hi << "] (f = " << flo
       << ", " << fhi << ")";
    throw bracket_error(os.str());
  }
  double xbest = 0.5 * (lo + hi), fbest = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 300 && hi - lo > tol; ++it) {
    double x;
    if (it % 2 == 0 && fhi != flo) {
      x = hi - fhi * (hi - lo) / (fhi - flo);  // secant
      double margin = 0.01 * (hi - lo);
      if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (lo + hi);
    } else {
      x = 0.5 * (lo + hi);
    }
    double fx = f(x);
    if (!std::isfinite(fx)) throw numeric_error("find_root: non-finite value");
    if (std::fabs(fx) < fbest) {
      fbest = std::fabs(fx);
      xbest = x;
    }
    if (fx == 0.0) return x;
    if (flo * fx < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
  }
  double mid = 0.5 * (lo + hi);
  return fbest <= std::fabs(f(mid)) ? xbest : mid;
}

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section minimization on [lo,hi]; for unimodal f the argmin is
/// located within tol, otherwise the best point among all evaluations
/// (endpoints included) is returned.
template <typename F>
ScalarMin minimize_scalar(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::domain_error("minimize_scalar: requires lo < hi");
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  ScalarMin best{lo, f(lo)};
  auto consider = [&](double x, double v) {
    if (!std::isfinite(v)) throw numeric_error("minimize_scalar: non-finite value");
    if (v < best.value) best = {x, v};
  };
  consider(hi, f(hi));
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best;
}

/// Coarse scan over npoints (endpoints included) followed by golden-section
/// refinement inside the bracket around the best scan point. Used where
/// unimodality is plausible but unproven.
template <typename F>
ScalarMin minimize_scan(F&& f, double lo, double hi, int npoints, double tol) {
  if (npoints < 3) throw std::domain_error("minimize_scan: need >= 3 scan points");
  std::vector<double> xs(npoints), vs(npoints);
  ScalarMin best{lo, std::numeric_limits<double>::infinity()};
  int ibest = 0;
  for (int i = 0; i < npoints; ++i) {
    xs[i] = lo + (hi - lo) * i / (npoints - 1.0);
    vs[i] = f(xs[i]);
    if (!std::isfinite(vs[i])) throw numeric_error("minimize_scan: non-finite value");
    if (vs[i] < best.value) {
      best = {xs[i], vs[i]};
      ibest = i;
    }
  }
  double a = xs[std::max(ibest - 1, 0)];
  double b = xs[std::min(ibest + 1, npoints - 1)];
  if (b > a) {
    ScalarMin refined = minimize_scalar(f, a, b, tol);
    if (refined.value < best.value) best = refined;
  }
  return best;
}

}  // namespace miso::specfun

#endif  // MISO_SPECFUN_HPP
