#include <iostream>

#include "commands.hpp"
#include "haardist/analytic.hpp"
#include "haardist/empirics.hpp"
#include "haardist/io.hpp"

namespace haardist::cli {

int run_metric(const MetricArgs& args) {
  auto [spec, d] = args.source.resolve();
  (void)d;
  if (args.hist_path.empty()) throw DomainError("--hist FILE is required");
  auto hist = histogram_from_json(read_json_file(args.hist_path));

  const double s_eff = args.s_eff > 0.0 ? args.s_eff : args.s;
  Spectrum model_spec = args.gamma_eff > 0.0 ? depolarize_spectrum(spec, args.gamma_eff) : spec;
  auto dist = build_distribution(model_spec, EnvDim(s_eff));
  const double km = ks_metric(hist, [&](double x) { return dist.cdf(x); });

  nlohmann::json config{{"command", "metric"},
                        {"hist", args.hist_path},
                        {"spectrum", spectrum_to_json(spec)},
                        {"s", args.s},
                        {"gamma_eff", args.gamma_eff},
                        {"s_eff", s_eff}};
  nlohmann::json mj{{"ks_metric", km},
                    {"gamma_eff", args.gamma_eff},
                    {"s_eff", s_eff},
                    {"spectrum", spectrum_to_json(model_spec)}};
  stamp(mj, config_hash(config), 0);
  if (!args.out.empty()) {
    write_json_file(std::filesystem::path(args.out) / "metric.json", mj);
  }

  std::cout << "ks_metric=" << format_double(km) << "\n";
  return 0;
}

}  // namespace haardist::cli
