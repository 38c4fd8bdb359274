#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "haardist/analytic.hpp"
#include "haardist/empirics.hpp"
#include "haardist/io.hpp"
#include "haardist/parallel.hpp"
#include "haardist/qsim.hpp"

namespace haardist::cli {

namespace {

/// tr(Pi rho) with Pi diagonal in blocks ordered like the spectrum entries.
double overlap(const Spectrum& spec, const DensityState& state) {
  double acc = 0.0;
  int offset = 0;
  for (const auto& e : spec.entries()) {
    double block = 0.0;
    for (int i = 0; i < e.multiplicity; ++i) {
      block += state.rho(offset + i, offset + i).real();
    }
    acc += e.value * block;
    offset += e.multiplicity;
  }
  return acc;
}

}  // namespace

int run_oracle(const OracleArgs& args) {
  auto [spec, d] = args.source.resolve();
  if (args.m < 1) throw DomainError("m must be at least 1");
  if (args.s < 1) throw DomainError("s must be at least 1");

  auto dist = build_distribution(spec, args.s);
  const int threads = resolve_threads(args.threads);

  std::vector<double> samples(static_cast<std::size_t>(args.m));
  parallel_for(samples.size(), threads, [&](std::size_t j) {
    Rng rng(derive_seed(args.seed, j));
    samples[j] = overlap(spec, haar_mixed_state(d, args.s, rng));
  });

  auto hist = bin_samples(samples, log_bins(args.bins, args.bin_lo, args.bin_hi));

  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  const double m = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = dist.cdf(samples[i]);
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / m));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / m - f));
  }

  nlohmann::json config{{"command", "oracle"},
                        {"spectrum", spectrum_to_json(spec)},
                        {"s", args.s},
                        {"m", args.m},
                        {"seed", args.seed},
                        {"bins", {{"count", args.bins}, {"lo", args.bin_lo}, {"hi", args.bin_hi}}}};
  const std::string hash = config_hash(config);
  const std::filesystem::path out_dir(args.out);

  nlohmann::json oj{{"ks_classical", ks},
                    {"m", args.m},
                    {"s", args.s},
                    {"spectrum", spectrum_to_json(spec)},
                    {"support", {dist.min_value(), dist.max_value()}}};
  stamp(oj, hash, args.seed);
  write_json_file(out_dir / "oracle.json", oj);

  nlohmann::json hj = histogram_to_json(hist);
  stamp(hj, hash, args.seed);
  write_json_file(out_dir / "histogram.json", hj);
  std::ostringstream csv;
  write_histogram_csv(csv, hist);
  write_text_file(out_dir / "histogram.csv", csv.str());

  std::cout << "classical KS over " << args.m << " draws: " << format_double(ks) << "\n";
  return 0;
}

}  // namespace haardist::cli
