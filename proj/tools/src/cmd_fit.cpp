#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "haardist/analytic.hpp"
#include "haardist/fit.hpp"
#include "haardist/io.hpp"
#include "haardist/parallel.hpp"
#include "haardist/povm.hpp"

namespace haardist::cli {

namespace {

FitOptions make_options(const FitArgs& args) {
  FitOptions options;
  options.gamma_hi = args.gamma_hi;
  options.s_hi = args.s_hi;
  options.max_evaluations_per_start = args.max_evaluations;
  options.threads = resolve_threads(args.threads);
  return options;
}

/// CDF of the fitted effective model, for the binned KS column.
double model_ks(const BinnedHistogram& hist, const Spectrum& spec, const EffectiveFit& fit) {
  auto noisy = depolarize_spectrum(spec, fit.gamma_eff);
  auto dist = build_distribution(noisy, EnvDim(std::max(1.0, fit.s_eff)));
  return ks_metric(hist, [&](double x) { return dist.cdf(x); });
}

struct CellFit {
  // grid coordinates from the cell metadata
  int n = 0;
  int k = 0;
  double gamma = 0.0;
  int m = 0;
  EffectiveFit fit;
  double ks = 0.0;
};

enum class CellOutcome { fitted, unconverged, skipped };

CellOutcome run_one_cell(const std::filesystem::path& dir, const FitOptions& options,
                         CellFit& out, std::string& error) {
  const auto meta = read_json_file((dir / "metadata.json").string());
  out.n = meta.at("n").get<int>();
  out.k = meta.at("k").get<int>();
  out.gamma = meta.at("gamma").get<double>();
  out.m = meta.at("m").get<int>();
  const auto kind = povm_kind_from_string(meta.at("povm").get<std::string>());
  if (kind == PovmKind::nonsic) {
    error = "nonsic elements have differing spectra";
    return CellOutcome::skipped;
  }

  auto hist = histogram_from_json(read_json_file((dir / "histogram.json").string()));
  auto set = MeasurementSet::build(kind, out.n);
  auto spec = set.element_spectrum(0);

  bool converged = true;
  try {
    out.fit = fit_effective(hist, spec, set.dim(), options);
  } catch (const FitFailed& e) {
    out.fit = e.best;
    converged = false;
    error = e.what();
  }
  out.ks = model_ks(hist, spec, out.fit);

  nlohmann::json fj = fit_to_json(out.fit);
  fj["ks"] = out.ks;
  if (!converged) fj["error"] = error;
  const auto meta_hash = meta.contains("config_hash") ? meta.at("config_hash").get<std::string>()
                                                      : std::string("unknown");
  const auto seed = meta.contains("seed") ? meta.at("seed").get<std::uint64_t>() : 0;
  stamp(fj, meta_hash, seed);
  write_json_file(dir / "fit.json", fj);
  return converged ? CellOutcome::fitted : CellOutcome::unconverged;
}

int run_grid(const FitArgs& args) {
  const FitOptions options = make_options(args);
  const std::filesystem::path root(args.grid_dir);
  if (!std::filesystem::is_directory(root)) {
    throw DomainError("--grid expects a directory of simulation cells");
  }

  std::vector<std::filesystem::path> cells;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    if (std::filesystem::exists(entry.path() / "histogram.json") &&
        std::filesystem::exists(entry.path() / "metadata.json")) {
      cells.push_back(entry.path());
    }
  }
  std::sort(cells.begin(), cells.end());
  if (cells.empty()) throw DomainError("no completed cells under '" + args.grid_dir + "'");

  std::vector<CellFit> rows;
  for (const auto& dir : cells) {
    CellFit row;
    std::string error;
    switch (run_one_cell(dir, options, row, error)) {
      case CellOutcome::skipped:
        std::cerr << "skip " << dir.filename().string() << ": " << error << "\n";
        break;
      case CellOutcome::unconverged:
        std::cerr << "warn " << dir.filename().string() << ": " << error << "\n";
        rows.push_back(row);
        break;
      case CellOutcome::fitted:
        rows.push_back(row);
        break;
    }
  }

  std::sort(rows.begin(), rows.end(), [](const CellFit& a, const CellFit& b) {
    return std::tie(a.n, a.k, a.gamma, a.m) < std::tie(b.n, b.k, b.gamma, b.m);
  });

  std::ostringstream csv;
  csv << "n,k,gamma,m,gamma_eff,s_eff,objective,ks\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", r.n, r.k,
                  r.gamma, r.m, r.fit.gamma_eff, r.fit.s_eff, r.fit.objective, r.ks);
    csv << buf;
  }
  const std::filesystem::path out =
      args.out.empty() ? root / "fits.csv" : std::filesystem::path(args.out) / "fits.csv";
  write_text_file(out, csv.str());
  std::cout << "wrote " << out.string() << " (" << rows.size() << " cells)\n";
  return 0;
}

}  // namespace

int run_fit(const FitArgs& args) {
  if (!args.grid_dir.empty()) return run_grid(args);
  if (args.hist_path.empty()) {
    throw DomainError("pass --hist FILE for a single fit or --grid DIR for a sweep");
  }

  auto [spec, d] = args.source.resolve();
  if (args.d > 0 && args.d != d) {
    throw DimensionMismatch("--d disagrees with the resolved spectrum dimension");
  }
  auto hist = histogram_from_json(read_json_file(args.hist_path));

  const FitOptions options = make_options(args);
  EffectiveFit fit;
  bool converged = true;
  std::string error;
  try {
    fit = fit_effective(hist, spec, d, options);
  } catch (const FitFailed& e) {
    fit = e.best;
    converged = false;
    error = e.what();
  }
  const double ks = model_ks(hist, spec, fit);

  nlohmann::json config{{"command", "fit"},
                        {"hist", args.hist_path},
                        {"spectrum", spectrum_to_json(spec)},
                        {"d", d},
                        {"gamma_hi", args.gamma_hi},
                        {"s_hi", args.s_hi},
                        {"max_evaluations", args.max_evaluations}};
  nlohmann::json fj = fit_to_json(fit);
  fj["ks"] = ks;
  if (!converged) fj["error"] = error;
  stamp(fj, config_hash(config), 0);
  const std::filesystem::path out_dir(args.out.empty() ? "." : args.out);
  write_json_file(out_dir / "fit.json", fj);

  std::cout << "gamma_eff=" << format_double(fit.gamma_eff)
            << " s_eff=" << format_double(fit.s_eff)
            << " objective=" << format_double(fit.objective) << " ks=" << format_double(ks)
            << "\n";
  if (!converged) throw FitFailed(error, fit);
  return 0;
}

}  // namespace haardist::cli
