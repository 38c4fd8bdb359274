#include <chrono>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "haardist/empirics.hpp"
#include "haardist/fit.hpp"
#include "haardist/io.hpp"
#include "haardist/parallel.hpp"
#include "haardist/povm.hpp"
#include "haardist/qsim.hpp"

namespace haardist::cli {

namespace {

struct ResolvedConfig {
  std::vector<int> n{4};
  std::vector<int> k{0, 2, 4, 8, 16, 32};
  std::vector<double> gamma{0.0};
  int m = 128;
  std::string povm = "sic";
  std::uint64_t seed = 1;
  int bins = 10000;
  double bin_lo = 1e-20;
  double bin_hi = 1.0;
  bool fit = false;
  std::string out = "runs";
};

ResolvedConfig merge_config(const SimulateArgs& args) {
  ResolvedConfig cfg;
  if (!args.config_path.empty()) {
    const auto j = read_json_file(args.config_path);
    if (j.contains("n")) cfg.n = j.at("n").get<std::vector<int>>();
    if (j.contains("k")) cfg.k = j.at("k").get<std::vector<int>>();
    if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<std::vector<double>>();
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    if (j.contains("povm")) cfg.povm = j.at("povm").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bins")) {
      const auto& b = j.at("bins");
      if (b.contains("count")) cfg.bins = b.at("count").get<int>();
      if (b.contains("lo")) cfg.bin_lo = b.at("lo").get<double>();
      if (b.contains("hi")) cfg.bin_hi = b.at("hi").get<double>();
    }
    if (j.contains("fit")) cfg.fit = j.at("fit").get<bool>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  }
  if (!args.n.empty()) cfg.n = args.n;
  if (!args.k.empty()) cfg.k = args.k;
  if (!args.gamma.empty()) cfg.gamma = args.gamma;
  if (args.m > 0) cfg.m = args.m;
  if (!args.povm.empty()) cfg.povm = args.povm;
  if (args.seed_given) cfg.seed = args.seed;
  if (args.bins > 0) cfg.bins = args.bins;
  if (args.bin_lo > 0.0) cfg.bin_lo = args.bin_lo;
  if (args.bin_hi > 0.0) cfg.bin_hi = args.bin_hi;
  if (args.fit >= 0) cfg.fit = args.fit != 0;
  if (!args.out.empty()) cfg.out = args.out;

  if (cfg.n.empty() || cfg.k.empty() || cfg.gamma.empty()) {
    throw DomainError("n, k and gamma lists must be nonempty");
  }
  if (cfg.m < 1) throw DomainError("m must be at least 1");
  povm_kind_from_string(cfg.povm);
  return cfg;
}

nlohmann::json cell_config(const ResolvedConfig& cfg, int n, int k, double gamma) {
  return {{"command", "simulate"},
          {"n", n},
          {"k", k},
          {"gamma", gamma},
          {"m", cfg.m},
          {"povm", cfg.povm},
          {"seed", cfg.seed},
          {"bins", {{"count", cfg.bins}, {"lo", cfg.bin_lo}, {"hi", cfg.bin_hi}}},
          {"fit", cfg.fit}};
}

nlohmann::json conventions() {
  return {{"qubit_order", "qubit 0 is the most significant index bit"},
          {"initial_state", "|0...0>"},
          {"layering", "even layers pair (0,1)(2,3)..., odd layers (1,2)(3,4)..."},
          {"noise", "local depolarizing on every qubit after every layer"},
          {"sample_seeding", "sub-seed derived from (seed, sample, layer, gate)"}};
}

}  // namespace

int run_simulate(const SimulateArgs& args) {
  const ResolvedConfig cfg = merge_config(args);
  const int threads = resolve_threads(args.threads);
  const PovmKind kind = povm_kind_from_string(cfg.povm);
  const std::filesystem::path out_root(cfg.out);

  int done = 0, skipped = 0, failed = 0;
  for (int n : cfg.n) {
    for (int k : cfg.k) {
      for (double gamma : cfg.gamma) {
        const std::string name = cell_name(n, k, gamma, cfg.m, cfg.povm);
        const auto dir = out_root / name;
        if (std::filesystem::exists(dir / "histogram.json")) {
          std::cout << "skip " << name << " (already complete)\n";
          ++skipped;
          continue;
        }

        const auto config = cell_config(cfg, n, k, gamma);
        const std::string hash = config_hash(config);
        const auto t0 = std::chrono::steady_clock::now();
        try {
          CircuitConfig circuit;
          circuit.n = n;
          circuit.layers = k;
          circuit.gamma = gamma;
          circuit.seed = cfg.seed;

          auto states = sample_states(circuit, cfg.m, threads);
          auto set = MeasurementSet::build(kind, n);
          auto samples = total_distribution_samples(states, set, threads);
          auto hist = bin_samples(samples, log_bins(cfg.bins, cfg.bin_lo, cfg.bin_hi));

          nlohmann::json hj = histogram_to_json(hist);
          stamp(hj, hash, cfg.seed);
          write_json_file(dir / "histogram.json", hj);

          std::ostringstream csv;
          write_histogram_csv(csv, hist);
          write_text_file(dir / "histogram.csv", csv.str());

          nlohmann::json meta = config;
          meta["conventions"] = conventions();
          stamp(meta, hash, cfg.seed);
          if (gamma > 1.0) {
            double min_eig = 0.0;
            for (const auto& state : states) {
              min_eig = std::min(min_eig, state.min_eigenvalue());
            }
            meta["diagnostics"] = {{"non_cp_gamma", true}, {"min_state_eigenvalue", min_eig}};
          }

          if (cfg.fit && kind == PovmKind::nonsic) {
            std::cerr << "note: skipping fit for " << name
                      << " (nonsic elements have differing spectra)\n";
          } else if (cfg.fit) {
            FitOptions fit_options;
            fit_options.threads = threads;
            try {
              auto fit = fit_effective(hist, set.element_spectrum(0), set.dim(), fit_options);
              nlohmann::json fj = fit_to_json(fit);
              stamp(fj, hash, cfg.seed);
              write_json_file(dir / "fit.json", fj);
            } catch (const FitFailed& e) {
              nlohmann::json fj = fit_to_json(e.best);
              fj["error"] = e.what();
              stamp(fj, hash, cfg.seed);
              write_json_file(dir / "fit.json", fj);
            }
          }

          meta["timing_seconds"] =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          write_json_file(dir / "metadata.json", meta);
          std::filesystem::remove(dir / "error.json");
          std::cout << "done " << name << "\n";
          ++done;
        } catch (const std::exception& e) {
          nlohmann::json err{{"error", e.what()}};
          stamp(err, hash, cfg.seed);
          write_json_file(dir / "error.json", err);
          std::cerr << "fail " << name << ": " << e.what() << "\n";
          ++failed;
        }
      }
    }
  }
  std::cout << done << " cells done, " << skipped << " skipped, " << failed << " failed\n";
  return 0;
}

}  // namespace haardist::cli
