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

#ifndef MISO_COMMON_HPP
#define MISO_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace miso {

/// Numerical routine failed to converge or produced a non-finite value.
/// The message carries the diagnostics of the failing computation.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A root bracket was requested without a sign change.
class bracket_error : public std::runtime_error {
 public:
  explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or mutually inconsistent configuration values.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Constrained solver (e.g. Lagrange multiplier search) failed; the message
/// contains a trace of the bracket state.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// rho == 1 reached a formula that is singular there; callers must dispatch
/// to the perfect-CSIT expressions instead.
class singular_parameter : public std::domain_error {
 public:
  explicit singular_parameter(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

/// Clamp an accumulated probability to [0,1]. Overshoot beyond `slack`
/// indicates a bug rather than rounding and is reported as an error.
inline double clamp_probability(double p, double slack = 1e-12) {
  if (p < -slack || p > 1.0 + slack) {
    throw numeric_error("probability out of range by more than slack: p=" +
                        std::to_string(p));
  }
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace detail

/// Piecewise-linear interpolation on a strictly increasing grid, clamped to
/// the end values outside it. This is the one interpolation rule shared by
/// policy tables, their CSV round trip, and the Monte Carlo replay.
inline double interp_clamped(const std::vector<double>& xs,
                             const std::vector<double>& ys, double x) {
  if (xs.empty() || xs.size() != ys.size())
    throw config_error("interp_clamped: bad table");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}
}  // namespace miso

#endif  // MISO_COMMON_HPP
