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

#ifndef MISO_POLICY_IO_HPP
#define MISO_POLICY_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "miso/common.hpp"
#include "miso/ospa.hpp"
#include "miso/tpc.hpp"

namespace miso {

namespace detail {

/// Shortest decimal that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec <= 16; ++prec) {
      char shorter[40];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

inline void write_table_csv(const std::string& path, const char* header,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path);
  out << header << "\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << format_double(xs[i]) << "," << format_double(ys[i]) << "\n";
  if (!out) throw config_error("write failed: " + path);
}

inline void read_table_csv(const std::string& path, const char* header,
                           std::vector<double>& xs, std::vector<double>& ys) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw config_error("bad policy CSV header in " + path + " (expected '" +
                       header + "')");
  xs.clear();
  ys.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw config_error("malformed policy CSV row in " + path + ": " + line);
    xs.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
    ys.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
  }
}

}  // namespace detail

inline void write_policy_csv(const SpatialPolicy& policy, const std::string& path) {
  policy.validate();
  detail::write_table_csv(path, "gamma,lambda_opt", policy.gamma_grid,
                          policy.lambda_values);
}

inline SpatialPolicy read_spatial_policy_csv(const std::string& path,
                                             const SystemConfig& config) {
  SpatialPolicy policy;
  policy.config = config;
  detail::read_table_csv(path, "gamma,lambda_opt", policy.gamma_grid,
                         policy.lambda_values);
  policy.validate();
  return policy;
}

inline void write_policy_csv(const PowerPolicy& policy, const std::string& path) {
  policy.validate();
  detail::write_table_csv(path, "gamma,p", policy.gamma_grid, policy.p_values);
}

/// The CSV carries only the (gamma, p) table; config, scheme, and (when the
/// stationarity check matters) the Lagrange constant come from the caller.
inline PowerPolicy read_power_policy_csv(const std::string& path,
                                         const SystemConfig& config,
                                         TpcScheme scheme,
                                         double lagrange_constant = 1.0) {
  PowerPolicy policy;
  policy.config = config;
  policy.scheme = scheme;
  policy.lagrange_constant = lagrange_constant;
  detail::read_table_csv(path, "gamma,p", policy.gamma_grid, policy.p_values);
  policy.validate();
  return policy;
}

}  // namespace miso

#endif  // MISO_POLICY_IO_HPP
