#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "haardist/errors.hpp"
#include "haardist/version.hpp"

namespace {

using haardist::cli::SpectrumSource;

void add_source_flags(CLI::App* sub, SpectrumSource& src) {
  sub->add_option("--spec", src.spec_path, "spectrum JSON file");
  sub->add_option("--projector", src.projector_rank, "builtin projector of this rank");
  sub->add_option("--dim", src.dim, "Hilbert space dimension for --projector");
  sub->add_option("--povm", src.povm,
                  "use the element-0 spectrum of this measurement set (pvm or sic)");
  sub->add_option("--n", src.qubits, "qubit count for --povm");
  sub->add_flag("--tent", src.tent, "builtin test spectrum {0, 1/2, 1}");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Distributions of expectation values under Haar-random mixed states:\n"
      "exact laws, noisy brickwork circuit simulation, and effective-model fits."};
  app.set_version_flag("--version", haardist::kVersion);
  app.require_subcommand(1);

  int rc = 0;

  haardist::cli::AnalyticArgs an;
  auto* analytic = app.add_subcommand("analytic", "Evaluate the exact overlap law");
  add_source_flags(analytic, an.source);
  analytic->add_option("--s", an.s, "environment dimension (non-integral allowed for two-point spectra)");
  analytic->add_option("--gamma", an.gamma, "global depolarization strength")
      ->check(CLI::Range(0.0, 1.0));
  analytic->add_option("--k", an.k, "circuit depth, used with --fig1")->check(CLI::NonNegativeNumber);
  analytic->add_flag("--fig1", an.fig1,
                     "derive (gamma, s) from --gamma per layer and depth --k");
  analytic->add_option("--grid", an.grid, "rows in the pdf/cdf grid CSV (0 disables)");
  analytic->add_option("--moments", an.moments, "emit moments up to this order");
  analytic->add_flag("--force-general", an.force_general,
                     "use the general piecewise form even for two-point spectra");
  analytic->add_option("--precision-bits", an.precision_bits, "working precision floor");
  analytic->add_option("--max-precision-bits", an.max_precision_bits, "precision cap");
  analytic->add_option("--out", an.out, "output directory");
  analytic->callback([&] { rc = haardist::cli::run_analytic(an); });

  haardist::cli::SimulateArgs sim;
  bool fit_on = false, fit_off = false;
  CLI::Option* sim_seed = nullptr;
  auto* simulate = app.add_subcommand("simulate", "Run noisy brickwork circuit grids");
  simulate->add_option("--config", sim.config_path, "experiment config JSON");
  simulate->add_option("--n", sim.n, "qubit counts")->delimiter(',');
  simulate->add_option("--k", sim.k, "circuit depths")->delimiter(',');
  simulate->add_option("--gamma", sim.gamma, "local noise strengths")->delimiter(',');
  simulate->add_option("--m", sim.m, "circuit realizations per cell");
  simulate->add_option("--povm", sim.povm, "measurement set: pvm, sic or nonsic");
  sim_seed = simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--bins", sim.bins, "histogram bin count");
  simulate->add_option("--bin-lo", sim.bin_lo, "lowest bin edge");
  simulate->add_option("--bin-hi", sim.bin_hi, "highest bin edge");
  simulate->add_flag("--fit", fit_on, "fit the effective model per cell");
  simulate->add_flag("--no-fit", fit_off, "disable per-cell fits");
  simulate->add_option("--out", sim.out, "output directory");
  simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)");
  simulate->callback([&] {
    sim.seed_given = sim_seed->count() > 0;
    if (fit_on) sim.fit = 1;
    if (fit_off) sim.fit = 0;
    rc = haardist::cli::run_simulate(sim);
  });

  haardist::cli::FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the effective noise model to a histogram");
  fit_cmd->add_option("--hist", fit.hist_path, "histogram JSON file");
  fit_cmd->add_option("--grid", fit.grid_dir, "fit every completed cell under this directory");
  add_source_flags(fit_cmd, fit.source);
  fit_cmd->add_option("--d", fit.d, "cross-check the spectrum dimension");
  fit_cmd->add_option("--gamma-hi", fit.gamma_hi, "upper bound on gamma_eff");
  fit_cmd->add_option("--s-hi", fit.s_hi, "upper bound on s_eff (0 = d^2)");
  fit_cmd->add_option("--max-evals", fit.max_evaluations, "objective evaluations per start");
  fit_cmd->add_option("--out", fit.out, "output directory");
  fit_cmd->add_option("--threads", fit.threads, "worker threads (0 = auto)");
  fit_cmd->callback([&] { rc = haardist::cli::run_fit(fit); });

  haardist::cli::OracleArgs oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Monte-Carlo check of the analytic law by Haar sampling");
  add_source_flags(oracle_cmd, oracle.source);
  oracle_cmd->add_option("--s", oracle.s, "environment dimension");
  oracle_cmd->add_option("--m", oracle.m, "number of Haar draws");
  oracle_cmd->add_option("--seed", oracle.seed, "base seed");
  oracle_cmd->add_option("--bins", oracle.bins, "histogram bin count");
  oracle_cmd->add_option("--bin-lo", oracle.bin_lo, "lowest bin edge");
  oracle_cmd->add_option("--bin-hi", oracle.bin_hi, "highest bin edge");
  oracle_cmd->add_option("--out", oracle.out, "output directory");
  oracle_cmd->add_option("--threads", oracle.threads, "worker threads (0 = auto)");
  oracle_cmd->callback([&] { rc = haardist::cli::run_oracle(oracle); });

  haardist::cli::MetricArgs metric;
  auto* metric_cmd =
      app.add_subcommand("metric", "Binned KS distance of a histogram against a model law");
  metric_cmd->add_option("--hist", metric.hist_path, "histogram JSON file")->required();
  add_source_flags(metric_cmd, metric.source);
  metric_cmd->add_option("--s", metric.s, "environment dimension of the clean law");
  metric_cmd->add_option("--gamma-eff", metric.gamma_eff, "depolarize the model by this strength");
  metric_cmd->add_option("--s-eff", metric.s_eff, "override --s for the model");
  metric_cmd->add_option("--out", metric.out, "output directory (optional)");
  metric_cmd->callback([&] { rc = haardist::cli::run_metric(metric); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const haardist::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const haardist::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
