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

#ifndef MISO_SWEEP_HPP
#define MISO_SWEEP_HPP

#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "miso/analytic.hpp"
#include "miso/common.hpp"
#include "miso/csir.hpp"
#include "miso/mc.hpp"
#include "miso/model.hpp"
#include "miso/ospa.hpp"
#include "miso/policy_io.hpp"
#include "miso/tpc.hpp"

namespace miso {

/// Everything the sweep CLI can evaluate per (config, SNR) point.
enum class SweepScheme {
  uspa,
  bf_ic,
  bf_perfect,
  ospa,
  uspa_tpc,
  bfic_tpc,
  uspa_csir_eq,
  uspa_csir_opt,
  bfic_csir_eq,
  bfic_csir_opt,
};

inline const char* sweep_scheme_name(SweepScheme s) {
  switch (s) {
    case SweepScheme::uspa: return "USPA";
    case SweepScheme::bf_ic: return "BF-IC";
    case SweepScheme::bf_perfect: return "BF-PERFECT";
    case SweepScheme::ospa: return "OSPA";
    case SweepScheme::uspa_tpc: return "USPA-TPC";
    case SweepScheme::bfic_tpc: return "BFIC-TPC";
    case SweepScheme::uspa_csir_eq: return "USPA-CSIR-EQ";
    case SweepScheme::uspa_csir_opt: return "USPA-CSIR-OPT";
    case SweepScheme::bfic_csir_eq: return "BFIC-CSIR-EQ";
    case SweepScheme::bfic_csir_opt: return "BFIC-CSIR-OPT";
  }
  return "?";
}

inline std::optional<SweepScheme> parse_sweep_scheme(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "uspa") return SweepScheme::uspa;
  if (s == "bf-ic" || s == "bfic") return SweepScheme::bf_ic;
  if (s == "bf-perfect" || s == "bfperfect") return SweepScheme::bf_perfect;
  if (s == "ospa") return SweepScheme::ospa;
  if (s == "uspa-tpc") return SweepScheme::uspa_tpc;
  if (s == "bfic-tpc") return SweepScheme::bfic_tpc;
  if (s == "uspa-csir-eq") return SweepScheme::uspa_csir_eq;
  if (s == "uspa-csir-opt") return SweepScheme::uspa_csir_opt;
  if (s == "bfic-csir-eq") return SweepScheme::bfic_csir_eq;
  if (s == "bfic-csir-opt") return SweepScheme::bfic_csir_opt;
  return std::nullopt;
}

struct SweepSpec {
  std::vector<SweepScheme> schemes;
  std::vector<int> Ms{2};
  double R = 2.0;
  std::vector<double> rhos{0.9};
  double snr_start_db = 0.0;
  double snr_stop_db = 20.0;
  double snr_step_db = 1.0;
  int T = 100;  // training block length for the CSIR schemes
  bool with_mc = false;
  McConfig mc{1000000, 1, 1};
  bool assert_oracle = false;
  int threads = 1;  // concurrency across sweep points
  std::string output_path;

  void validate() const {
    if (schemes.empty()) throw config_error("SweepSpec: no schemes");
    if (Ms.empty()) throw config_error("SweepSpec: no antenna counts");
    if (rhos.empty()) throw config_error("SweepSpec: no rho values");
    if (!(snr_step_db > 0.0)) throw config_error("SweepSpec: snr step must be > 0");
    if (!(snr_start_db <= snr_stop_db))
      throw config_error("SweepSpec: snr start must be <= stop");
    if (!(R > 0.0)) throw config_error("SweepSpec: R must be > 0");
    if (threads < 1) throw config_error("SweepSpec: threads must be >= 1");
    if (with_mc) mc.validate();
  }

  std::vector<double> snr_points() const {
    std::vector<double> pts;
    for (double s = snr_start_db; s <= snr_stop_db + 1e-9; s += snr_step_db)
      pts.push_back(s);
    return pts;
  }
};

struct SweepRow {
  SweepScheme scheme = SweepScheme::uspa;
  int M = 1;
  double R = 0.0;
  double rho = 0.0;
  double snr_db = 0.0;
  double pout_analytic = 0.0;
  std::optional<OutageEstimate> mc;
  bool oracle_ok = true;  // |analytic - mc| <= 3 * half width, when mc present

  // policies backing the analytic value, kept for MC replay and export
  std::shared_ptr<const SpatialPolicy> spatial;
  std::shared_ptr<const PowerPolicy> power;
};

namespace detail {

/// Analytic outage for one sweep point; solves and attaches any policy the
/// scheme needs. rho = 1 rows dispatch to the perfect-CSIT closed forms.
inline void eval_analytic(SweepRow& row, double R, int T) {
  const double P = db_to_linear(row.snr_db);
  const SystemConfig cfg{row.M, R, P, row.rho};
  switch (row.scheme) {
    case SweepScheme::uspa:
      row.pout_analytic = pout_uspa(row.M, R, P);
      return;
    case SweepScheme::bf_perfect:
      row.pout_analytic = pout_bf_perfect(row.M, R, P);
      return;
    case SweepScheme::bf_ic:
      row.pout_analytic = pout_bfic(row.M, R, P, row.rho);
      return;
    case SweepScheme::ospa: {
      if (row.rho == 1.0) {
        row.pout_analytic = pout_bf_perfect(row.M, R, P);
        auto policy = std::make_shared<SpatialPolicy>();
        policy->config = cfg;
        policy->gamma_grid = {0.0, 1.0};
        policy->lambda_values = {1.0, 1.0};
        row.spatial = policy;
        return;
      }
      OspaResult res = pout_ospa(row.M, R, P, row.rho);
      row.pout_analytic = res.pout;
      row.spatial = std::make_shared<SpatialPolicy>(std::move(res.policy));
      return;
    }
    case SweepScheme::uspa_tpc:
    case SweepScheme::bfic_tpc: {
      TpcScheme ts = row.scheme == SweepScheme::uspa_tpc ? TpcScheme::uspa
                                                         : TpcScheme::bf_ic;
      auto policy = std::make_shared<PowerPolicy>(
          solve_policy(ts, row.M, R, P, row.rho));
      row.pout_analytic = pout_tpc(*policy);
      row.power = policy;
      return;
    }
    case SweepScheme::uspa_csir_eq:
    case SweepScheme::bfic_csir_eq: {
      TrainingConfig tc = equal_power_training(P, T, row.M);
      row.pout_analytic = row.scheme == SweepScheme::uspa_csir_eq
                              ? pout_uspa_csir(tc, R, row.rho)
                              : pout_bfic_csir(tc, R, row.rho);
      return;
    }
    case SweepScheme::uspa_csir_opt:
    case SweepScheme::bfic_csir_opt: {
      TrainingConfig tc = optimize_training(P, T, row.M);
      row.pout_analytic = row.scheme == SweepScheme::uspa_csir_opt
                              ? pout_uspa_csir(tc, R, row.rho)
                              : pout_bfic_csir(tc, R, row.rho);
      return;
    }
  }
  throw config_error("eval_analytic: unknown scheme");
}

/// MC column for one row. CSIR bounds are validated at their effective
/// parameters (P', R', rho_e), which is the system the bound is exact for.
inline OutageEstimate eval_mc(const SweepRow& row, double R, int T,
                              const McConfig& mc) {
  const double P = db_to_linear(row.snr_db);
  const SystemConfig cfg{row.M, R, P, row.rho};
  switch (row.scheme) {
    case SweepScheme::uspa:
      return simulate(Scheme::uspa, cfg, mc);
    case SweepScheme::bf_perfect:
      return simulate(Scheme::bf_perfect, cfg, mc);
    case SweepScheme::bf_ic:
      return row.rho == 1.0 ? simulate(Scheme::bf_perfect, cfg, mc)
                            : simulate(Scheme::bf_ic, cfg, mc);
    case SweepScheme::ospa:
      return simulate(*row.spatial, cfg, mc);
    case SweepScheme::uspa_tpc:
    case SweepScheme::bfic_tpc:
      return simulate(*row.power, cfg, mc);
    case SweepScheme::uspa_csir_eq:
    case SweepScheme::uspa_csir_opt: {
      TrainingConfig tc = row.scheme == SweepScheme::uspa_csir_eq
                              ? equal_power_training(P, T, row.M)
                              : optimize_training(P, T, row.M);
      EffectiveLink link = effective_link(tc, R, row.rho);
      SystemConfig eff{row.M, link.R_prime, link.P_prime, link.rho_e};
      return simulate(Scheme::uspa, eff, mc);
    }
    case SweepScheme::bfic_csir_eq:
    case SweepScheme::bfic_csir_opt: {
      TrainingConfig tc = row.scheme == SweepScheme::bfic_csir_eq
                              ? equal_power_training(P, T, row.M)
                              : optimize_training(P, T, row.M);
      EffectiveLink link = effective_link(tc, R, row.rho);
      SystemConfig eff{row.M, link.R_prime, link.P_prime, link.rho_e};
      return simulate(Scheme::bf_ic, eff, mc);
    }
  }
  throw config_error("eval_mc: unknown scheme");
}

}  // namespace detail

/// Evaluate every (scheme, M, rho, SNR) point of the spec. Analytic values
/// (and any policy solves) run concurrently across points with results
/// assembled in spec order; MC columns follow sequentially, each internally
/// parallel over its own workers.
inline std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (SweepScheme scheme : spec.schemes)
    for (int M : spec.Ms)
      for (double rho : spec.rhos)
        for (double snr : spec.snr_points()) {
          SweepRow row;
          row.scheme = scheme;
          row.M = M;
          row.R = spec.R;
          row.rho = rho;
          row.snr_db = snr;
          rows.push_back(row);
        }

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(rows.size());
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      try {
        detail::eval_analytic(rows[i], spec.R, spec.T);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int nthreads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(spec.threads), rows.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!errors[i].empty())
      throw solver_error("sweep point " + std::to_string(i) + " (" +
                         sweep_scheme_name(rows[i].scheme) + "): " + errors[i]);

  if (spec.with_mc) {
    for (auto& row : rows) {
      row.mc = detail::eval_mc(row, spec.R, spec.T, spec.mc);
      row.oracle_ok = std::fabs(row.pout_analytic - row.mc->p_hat) <=
                      3.0 * row.mc->half_width_95;
    }
  }
  return rows;
}

inline const char kSweepCsvHeader[] =
    "scheme,M,R,rho,snr_db,pout_analytic,pout_mc,mc_halfwidth,samples,seed";

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepCsvHeader << "\n";
  char buf[256];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.12g,%.12g,%.12g,%.12g",
                  sweep_scheme_name(row.scheme), row.M, row.R, row.rho,
                  row.snr_db, row.pout_analytic);
    out << buf;
    if (row.mc) {
      std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%lld,%llu", row.mc->p_hat,
                    row.mc->half_width_95, static_cast<long long>(row.mc->samples),
                    static_cast<unsigned long long>(row.mc->master_seed));
      out << buf;
    } else {
      out << ",,,,";
    }
    out << "\n";
  }
}

struct SweepResult {
  std::vector<SweepRow> rows;
  int oracle_violations = 0;
};

/// Run the sweep and write its CSV artifact.
inline SweepResult run_sweep(const SweepSpec& spec) {
  SweepResult result;
  result.rows = run_sweep_rows(spec);
  for (const auto& row : result.rows)
    if (row.mc && !row.oracle_ok) ++result.oracle_violations;
  if (!spec.output_path.empty()) {
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + spec.output_path);
    write_sweep_csv(result.rows, out);
    if (!out) throw config_error("write failed: " + spec.output_path);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Cross-over tables.
// ---------------------------------------------------------------------------

struct CrossoverRow {
  double rho = 0.0;
  std::optional<CrossoverResult> result;  // empty: no crossover in window
};

inline std::vector<CrossoverRow> crossover_table(int M, double R,
                                                 const std::vector<double>& rhos) {
  std::vector<CrossoverRow> out;
  for (double rho : rhos) {
    CrossoverRow row;
    row.rho = rho;
    if (rho > 0.0 && rho < 1.0) {
      try {
        row.result = crossover_snr(M, R, rho);
      } catch (const no_crossover&) {
        row.result = std::nullopt;
      }
    }
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figure reproduction (paper parameters; R = 2 nats throughout).
// ---------------------------------------------------------------------------

struct FigureOptions {
  std::string outdir = ".";
  bool plot_script = false;
  int threads = 1;
  // optional overrides; empty means the figure's paper defaults
  std::vector<double> rhos;
  std::vector<int> Ms;
  double snr_start_db = std::numeric_limits<double>::quiet_NaN();
  double snr_stop_db = std::numeric_limits<double>::quiet_NaN();
  double snr_step_db = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline void figure_sweep_ranges(const FigureOptions& opt, double& start,
                                double& stop, double& step) {
  if (!std::isnan(opt.snr_start_db)) start = opt.snr_start_db;
  if (!std::isnan(opt.snr_stop_db)) stop = opt.snr_stop_db;
  if (!std::isnan(opt.snr_step_db)) step = opt.snr_step_db;
}

inline void write_plot_script(const std::string& path,
                              const std::vector<std::string>& csvs,
                              const std::string& title, bool lambda_axes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path);
  out << "#!/usr/bin/env python3\n"
      << "# Generated plotting companion; reads the CSV files next to it.\n"
      << "import csv, collections\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "files = [\n";
  for (const auto& f : csvs) out << "    " << '"' << f << '"' << ",\n";
  out << "]\n\n";
  if (lambda_axes) {
    out << "for f in files:\n"
        << "    xs, ys = [], []\n"
        << "    with open(f) as fh:\n"
        << "        for row in csv.DictReader(fh):\n"
        << "            xs.append(float(row['gamma']))\n"
        << "            ys.append(float(row['lambda_opt']))\n"
        << "    plt.plot(xs, ys, label=f)\n"
        << "plt.xlabel('feedback SNR gamma')\n"
        << "plt.ylabel('lambda_opt')\n";
  } else {
    out << "series = collections.defaultdict(list)\n"
        << "for f in files:\n"
        << "    with open(f) as fh:\n"
        << "        for row in csv.DictReader(fh):\n"
        << "            key = (row['scheme'], row['M'], row['rho'])\n"
        << "            series[key].append((float(row['snr_db']),\n"
        << "                                float(row['pout_analytic'])))\n"
        << "for key, pts in sorted(series.items()):\n"
        << "    pts.sort()\n"
        << "    plt.semilogy([p[0] for p in pts], [p[1] for p in pts],\n"
        << "                 label='%s M=%s rho=%s' % key)\n"
        << "plt.xlabel('SNR (dB)')\n"
        << "plt.ylabel('outage probability')\n"
        << "plt.ylim(1e-6, 1)\n";
  }
  out << "plt.title(" << '"' << title << '"' << ")\n"
      << "plt.grid(True, which='both', alpha=0.3)\n"
      << "plt.legend(fontsize=7)\n"
      << "plt.savefig('" << title << ".png', dpi=150)\n";
}

}  // namespace detail

/// Reproduce the data behind one of the paper-style figures as CSV files in
/// opt.outdir; returns the files written.
inline std::vector<std::string> figure(int n, const FigureOptions& opt) {
  if (n < 1 || n > 5) throw config_error("figure: n must lie in 1..5");
  const double R = 2.0;
  std::vector<std::string> files;
  auto path = [&](const std::string& name) { return opt.outdir + "/" + name; };

  auto run_curves = [&](const std::string& name, std::vector<SweepScheme> schemes,
                        std::vector<int> Ms, std::vector<double> rhos,
                        double start, double stop, double step) {
    detail::figure_sweep_ranges(opt, start, stop, step);
    SweepSpec spec;
    spec.schemes = std::move(schemes);
    spec.Ms = opt.Ms.empty() ? std::move(Ms) : opt.Ms;
    spec.rhos = opt.rhos.empty() ? std::move(rhos) : opt.rhos;
    spec.R = R;
    spec.snr_start_db = start;
    spec.snr_stop_db = stop;
    spec.snr_step_db = step;
    spec.threads = opt.threads;
    spec.output_path = path(name);
    run_sweep(spec);
    files.push_back(spec.output_path);
  };

  switch (n) {
    case 1: {
      // USPA against BF-IC across feedback delays, plus cross-over locations.
      std::vector<double> rhos{0.0, 0.5, 0.9, 0.999, 1.0};
      if (!opt.rhos.empty()) rhos = opt.rhos;
      run_curves("fig1_outage.csv", {SweepScheme::uspa, SweepScheme::bf_ic}, {2},
                 rhos, -5.0, 40.0, 0.5);
      std::ofstream out(path("fig1_crossover.csv"), std::ios::binary);
      out << "rho,crossover_snr_db,sign_changes\n";
      char buf[128];
      for (const auto& row : crossover_table(2, R, rhos)) {
        if (row.result) {
          std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d\n", row.rho,
                        row.result->snr_db, row.result->sign_changes);
        } else {
          std::snprintf(buf, sizeof(buf), "%.12g,,\n", row.rho);
        }
        out << buf;
      }
      files.push_back(path("fig1_crossover.csv"));
      break;
    }
    case 2:
      run_curves("fig2_outage.csv",
                 {SweepScheme::uspa, SweepScheme::bf_ic, SweepScheme::bf_perfect},
                 {2, 4}, {0.999}, -5.0, 45.0, 0.5);
      break;
    case 3: {
      // lambda_opt(gamma) curves for (rho, SNR) pairs.
      std::vector<double> rhos = opt.rhos.empty() ? std::vector<double>{0.5, 0.9}
                                                  : opt.rhos;
      std::vector<double> snrs{10.0, 20.0};
      if (!std::isnan(opt.snr_start_db) && !std::isnan(opt.snr_stop_db))
        snrs = {opt.snr_start_db, opt.snr_stop_db};
      for (double rho : rhos)
        for (double snr : snrs) {
          std::vector<double> gammas, lambdas;
          for (double g = 0.0; g <= 12.0 + 1e-9; g += 0.25) {
            gammas.push_back(g);
            lambdas.push_back(lambda_opt(2, R, db_to_linear(snr), rho, g));
          }
          char name[80];
          std::snprintf(name, sizeof(name), "fig3_lambda_rho%g_snr%g.csv", rho, snr);
          detail::write_table_csv(path(name), "gamma,lambda_opt", gammas, lambdas);
          files.push_back(path(name));
        }
      break;
    }
    case 4:
      run_curves("fig4_outage.csv",
                 {SweepScheme::uspa, SweepScheme::bf_ic, SweepScheme::ospa,
                  SweepScheme::uspa_tpc, SweepScheme::bfic_tpc},
                 {2}, {0.9}, 0.0, 20.0, 1.0);
      break;
    case 5: {
      // M = 2 carries both training splits; M = 4 only the optimized one.
      run_curves("fig5_outage_m2.csv",
                 {SweepScheme::uspa, SweepScheme::bf_ic, SweepScheme::uspa_csir_eq,
                  SweepScheme::bfic_csir_eq, SweepScheme::uspa_csir_opt,
                  SweepScheme::bfic_csir_opt},
                 {2}, {0.9}, 0.0, 25.0, 0.5);
      run_curves("fig5_outage_m4.csv",
                 {SweepScheme::uspa, SweepScheme::bf_ic, SweepScheme::uspa_csir_opt,
                  SweepScheme::bfic_csir_opt},
                 {4}, {0.9}, 0.0, 25.0, 0.5);
      break;
    }
  }
  if (opt.plot_script) {
    std::string script = path("plot_fig" + std::to_string(n) + ".py");
    detail::write_plot_script(script, files, "figure" + std::to_string(n), n == 3);
    files.push_back(script);
  }
  return files;
}

}  // namespace miso

#endif  // MISO_SWEEP_HPP
