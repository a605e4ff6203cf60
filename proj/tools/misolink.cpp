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

// Command-line front end: outage sweeps, figure reproduction, cross-over
// tables, and policy export/replay. SNR is always entered in dB.
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 oracle mismatch
// (with --assert-oracle).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "miso/miso.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitOracle = 4;

struct CommonFlags {
  std::vector<std::string> schemes{"uspa"};
  std::vector<int> Ms{2};
  double R = 2.0;
  std::vector<double> rhos{0.9};
  double snr_start = 0.0;
  double snr_stop = 20.0;
  double snr_step = 1.0;
  int T = 100;
  long long mc_samples = 0;
  std::uint64_t seed = 1;
  int workers = 4;
  int threads = 4;
  std::string out;
  bool assert_oracle = false;
};

void add_config_file(CLI::App* cmd) {
  cmd->set_config("--config", "", "flat key=value file; command-line flags win")
      ->configurable(false);
}

miso::SweepSpec to_spec(const CommonFlags& f) {
  miso::SweepSpec spec;
  spec.schemes.clear();
  for (const auto& s : f.schemes) {
    auto parsed = miso::parse_sweep_scheme(s);
    if (!parsed) throw miso::config_error("unknown scheme: " + s);
    spec.schemes.push_back(*parsed);
  }
  spec.Ms = f.Ms;
  spec.R = f.R;
  spec.rhos = f.rhos;
  spec.snr_start_db = f.snr_start;
  spec.snr_stop_db = f.snr_stop;
  spec.snr_step_db = f.snr_step;
  spec.T = f.T;
  spec.threads = f.threads;
  spec.output_path = f.out;
  spec.assert_oracle = f.assert_oracle;
  if (f.mc_samples > 0) {
    spec.with_mc = true;
    spec.mc = miso::McConfig{f.mc_samples, f.seed, f.workers};
  }
  return spec;
}

int cmd_sweep(const CommonFlags& flags) {
  miso::SweepSpec spec = to_spec(flags);
  miso::SweepResult result = miso::run_sweep(spec);
  if (spec.output_path.empty()) miso::write_sweep_csv(result.rows, std::cout);
  if (result.oracle_violations > 0) {
    std::cerr << result.oracle_violations
              << " row(s) deviate from the MC oracle by more than 3 half-widths\n";
    if (spec.assert_oracle) return kExitOracle;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outage analysis for MISO links with delayed feedback"};
  app.require_subcommand(1);

  CommonFlags flags;
  miso::FigureOptions fig_opt;
  int fig_n = 1;
  std::string policy_kind = "spatial";
  std::string policy_path;
  double snr_db = 10.0;

  auto* sweep = app.add_subcommand("sweep", "outage sweep over SNR, CSV output");
  sweep->add_option("--scheme", flags.schemes,
                    "uspa, bf-ic, bf-perfect, ospa, uspa-tpc, bfic-tpc, "
                    "uspa-csir-eq, uspa-csir-opt, bfic-csir-eq, bfic-csir-opt");
  sweep->add_option("--M", flags.Ms, "antenna counts");
  sweep->add_option("--R", flags.R, "rate in nats per channel use");
  sweep->add_option("--rho", flags.rhos, "feedback correlations in [0,1]");
  sweep->add_option("--snr-start", flags.snr_start, "sweep start (dB)");
  sweep->add_option("--snr-stop", flags.snr_stop, "sweep stop (dB)");
  sweep->add_option("--snr-step", flags.snr_step, "sweep step (dB)");
  sweep->add_option("--T", flags.T, "training block length (CSIR schemes)");
  sweep->add_option("--mc-samples", flags.mc_samples,
                    "Monte Carlo samples per row (0 disables the MC columns)");
  sweep->add_option("--seed", flags.seed, "master seed for the MC streams");
  sweep->add_option("--workers", flags.workers, "MC worker threads");
  sweep->add_option("--threads", flags.threads, "concurrent sweep points");
  sweep->add_option("--out", flags.out, "output CSV path (default: stdout)");
  sweep->add_flag("--assert-oracle", flags.assert_oracle,
                  "exit 4 if any row misses its MC estimate by > 3 half-widths");
  add_config_file(sweep);

  auto* figure = app.add_subcommand("figure", "reproduce a figure's data as CSV");
  figure->add_option("n", fig_n, "figure number 1..5")->required();
  figure->add_option("--outdir", fig_opt.outdir, "output directory");
  figure->add_option("--rho", fig_opt.rhos, "override the figure's rho set");
  figure->add_option("--M", fig_opt.Ms, "override the figure's antenna counts");
  figure->add_option("--snr-start", fig_opt.snr_start_db, "override sweep start (dB)");
  figure->add_option("--snr-stop", fig_opt.snr_stop_db, "override sweep stop (dB)");
  figure->add_option("--snr-step", fig_opt.snr_step_db, "override sweep step (dB)");
  figure->add_option("--threads", fig_opt.threads, "concurrent sweep points");
  figure->add_flag("--plot-script", fig_opt.plot_script,
                   "also emit a python plotting script");
  add_config_file(figure);

  auto* crossover = app.add_subcommand("crossover",
                                       "USPA/BF-IC cross-over SNR per rho");
  crossover->add_option("--M", flags.Ms, "antenna count (first value used)");
  crossover->add_option("--R", flags.R, "rate in nats per channel use");
  crossover->add_option("--rho", flags.rhos, "feedback correlations");
  add_config_file(crossover);

  auto* policy = app.add_subcommand("policy", "solve and export a policy CSV");
  policy->add_option("--kind", policy_kind, "spatial | uspa-tpc | bfic-tpc");
  policy->add_option("--M", flags.Ms, "antenna count (first value used)");
  policy->add_option("--R", flags.R, "rate in nats per channel use");
  policy->add_option("--rho", flags.rhos, "feedback correlation (first value used)");
  policy->add_option("--snr-db", snr_db, "operating SNR (dB)");
  policy->add_option("--out", flags.out, "output CSV path")->required();
  add_config_file(policy);

  auto* replay = app.add_subcommand("replay",
                                    "Monte Carlo outage of an exported policy");
  replay->add_option("--policy", policy_path, "policy CSV path")->required();
  replay->add_option("--kind", policy_kind, "spatial | uspa-tpc | bfic-tpc");
  replay->add_option("--M", flags.Ms, "antenna count (first value used)");
  replay->add_option("--R", flags.R, "rate in nats per channel use");
  replay->add_option("--rho", flags.rhos, "feedback correlation (first value used)");
  replay->add_option("--snr-db", snr_db, "operating SNR (dB)");
  replay->add_option("--mc-samples", flags.mc_samples, "Monte Carlo samples")
      ->default_val(1000000);
  replay->add_option("--seed", flags.seed, "master seed");
  replay->add_option("--workers", flags.workers, "MC worker threads");
  add_config_file(replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(flags);

    if (figure->parsed()) {
      for (const auto& f : miso::figure(fig_n, fig_opt))
        std::cout << f << "\n";
      return 0;
    }

    if (crossover->parsed()) {
      int M = flags.Ms.front();
      auto rows = miso::crossover_table(M, flags.R, flags.rhos);
      std::printf("rho,crossover_snr_db,sign_changes\n");
      double prev = -1e300;
      bool monotone = true;
      for (const auto& row : rows) {
        if (row.result) {
          std::printf("%.12g,%.12g,%d\n", row.rho, row.result->snr_db,
                      row.result->sign_changes);
          if (row.result->snr_db <= prev) monotone = false;
          prev = row.result->snr_db;
        } else {
          std::printf("%.12g,,\n", row.rho);
        }
      }
      if (!monotone)
        std::fprintf(stderr, "warning: cross-over SNR not increasing in rho\n");
      return 0;
    }

    if (policy->parsed()) {
      int M = flags.Ms.front();
      double rho = flags.rhos.front();
      double P = miso::db_to_linear(snr_db);
      if (policy_kind == "spatial") {
        miso::OspaResult res = miso::pout_ospa(M, flags.R, P, rho);
        miso::write_policy_csv(res.policy, flags.out);
        std::printf("pout_ospa=%.12g rows=%zu\n", res.pout,
                    res.policy.gamma_grid.size());
      } else if (policy_kind == "uspa-tpc" || policy_kind == "bfic-tpc") {
        miso::TpcScheme ts = policy_kind == "uspa-tpc" ? miso::TpcScheme::uspa
                                                       : miso::TpcScheme::bf_ic;
        miso::PowerPolicy pp = miso::solve_policy(ts, M, flags.R, P, rho);
        miso::write_policy_csv(pp, flags.out);
        std::printf("pout_tpc=%.12g lagrange=%.12g mean_power=%.12g rows=%zu\n",
                    miso::pout_tpc(pp), pp.lagrange_constant,
                    miso::policy_mean_power(pp), pp.gamma_grid.size());
      } else {
        throw miso::config_error("unknown policy kind: " + policy_kind);
      }
      return 0;
    }

    if (replay->parsed()) {
      int M = flags.Ms.front();
      double rho = flags.rhos.front();
      miso::SystemConfig cfg{M, flags.R, miso::db_to_linear(snr_db), rho};
      miso::McConfig mc{flags.mc_samples, flags.seed, flags.workers};
      miso::OutageEstimate est;
      if (policy_kind == "spatial") {
        est = miso::simulate(miso::read_spatial_policy_csv(policy_path, cfg), cfg, mc);
      } else if (policy_kind == "uspa-tpc" || policy_kind == "bfic-tpc") {
        miso::TpcScheme ts = policy_kind == "uspa-tpc" ? miso::TpcScheme::uspa
                                                       : miso::TpcScheme::bf_ic;
        est = miso::simulate(miso::read_power_policy_csv(policy_path, cfg, ts), cfg, mc);
      } else {
        throw miso::config_error("unknown policy kind: " + policy_kind);
      }
      std::printf("p_hat=%.12g half_width_95=%.12g samples=%lld seed=%llu%s\n",
                  est.p_hat, est.half_width_95, est.samples,
                  static_cast<unsigned long long>(est.master_seed),
                  est.low_confidence ? " low_confidence" : "");
      return 0;
    }
  } catch (const miso::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
