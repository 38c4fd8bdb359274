#include <cstdio>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "haardist/analytic.hpp"
#include "haardist/io.hpp"

namespace haardist::cli {

int run_analytic(const AnalyticArgs& args) {
  auto [base_spec, d] = args.source.resolve();

  double gamma = args.gamma;
  double s = args.s;
  if (args.fig1) {
    auto params = fig1_parameterization(args.gamma, args.k);
    gamma = params.gamma_k;
    s = params.s_k;
    std::cout << "depth " << args.k << " maps to gamma=" << format_double(gamma)
              << ", s=" << params.s_k << "\n";
  }

  Spectrum spec = gamma > 0.0 ? depolarize_spectrum(base_spec, gamma) : base_spec;
  EnvDim env(s);

  BuildOptions options;
  options.precision_bits = args.precision_bits;
  options.max_precision_bits = args.max_precision_bits;
  options.force_power_sum = args.force_general;
  auto dist = build_distribution(spec, env, options);

  nlohmann::json config{{"command", "analytic"},
                        {"spectrum", spectrum_to_json(base_spec)},
                        {"s", s},
                        {"gamma", gamma},
                        {"grid", args.grid},
                        {"moments", args.moments},
                        {"force_general", args.force_general}};
  const std::string hash = config_hash(config);

  const std::filesystem::path out_dir(args.out);
  nlohmann::json dj = distribution_to_json(dist);
  dj["gamma"] = gamma;
  stamp(dj, hash, 0);
  write_json_file(out_dir / "distribution.json", dj);

  if (!dist.is_point_mass() && args.grid > 0) {
    std::ostringstream csv;
    write_grid_csv(csv, dist, args.grid);
    write_text_file(out_dir / "grid.csv", csv.str());
  }

  if (args.moments > 0) {
    auto closed = moments_closed_form(spec, env, args.moments);
    auto newton = moments_newton(spec, env, args.moments);
    std::ostringstream csv;
    csv << "t,closed_form,newton\n";
    char buf[80];
    for (int t = 0; t <= args.moments; ++t) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", t,
                    closed.values[static_cast<std::size_t>(t)],
                    newton.values[static_cast<std::size_t>(t)]);
      csv << buf;
    }
    write_text_file(out_dir / "moments.csv", csv.str());
  }

  switch (dist.kind()) {
    case DistributionKind::point_mass:
      std::cout << "point mass at " << format_double(dist.point_mass_location()) << "\n";
      break;
    case DistributionKind::beta:
      std::cout << "Beta(" << format_double(dist.beta_alpha()) << ", "
                << format_double(dist.beta_beta()) << ") on ["
                << format_double(dist.min_value()) << ", "
                << format_double(dist.max_value()) << "]\n";
      break;
    case DistributionKind::power_sum:
      std::cout << "piecewise polynomial with " << dist.terms().size() << " terms on ["
                << format_double(dist.min_value()) << ", "
                << format_double(dist.max_value()) << "] at " << dist.precision_bits()
                << " bits\n";
      break;
  }
  std::cout << "wrote " << (out_dir / "distribution.json").string() << "\n";
  return 0;
}

}  // namespace haardist::cli
