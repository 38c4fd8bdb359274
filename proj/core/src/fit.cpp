#include "haardist/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "haardist/parallel.hpp"

namespace haardist {

EffectiveModel::EffectiveModel(Spectrum spec, int d) : spec_(std::move(spec)), d_(d) {
  if (spec_.empty()) throw DomainError("effective model needs a spectrum");
  if (spec_.dimension() != d) {
    throw DimensionMismatch("spectrum dimension does not match the stated d");
  }
  if (spec_.distinct_count() < 2) {
    throw DegenerateSpectrum("effective model needs at least two distinct eigenvalues");
  }
  trace_over_dim_ = spec_.trace() / d_;
}

const AnalyticDistribution& EffectiveModel::distribution_for(double s_eff) const {
  const long long key = std::llround(s_eff * 1e12);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const double s_quantized = std::max(1.0, static_cast<double>(key) * 1e-12);
    auto dist =
        std::make_shared<AnalyticDistribution>(build_distribution(spec_, EnvDim(s_quantized)));
    it = cache_.emplace(key, std::move(dist)).first;
  }
  return *it->second;
}

double EffectiveModel::density(double p, double gamma_eff, double s_eff) const {
  if (!(gamma_eff >= 0.0 && gamma_eff < 1.0)) {
    throw DomainError("effective depolarization must lie in [0, 1)");
  }
  const AnalyticDistribution& dist = distribution_for(s_eff);
  const double scale = 1.0 - gamma_eff;
  const double z = (p - gamma_eff * trace_over_dim_) / scale;
  if (z < dist.min_value() || z > dist.max_value()) return 0.0;
  return dist.density(z) / scale;
}

double effective_density(double p, const Spectrum& spec, int d, double gamma_eff, double s_eff) {
  return EffectiveModel(spec, d).density(p, gamma_eff, s_eff);
}

namespace {

struct Point {
  double u = 0.0;  // normalized gamma coordinate
  double v = 0.0;  // normalized s coordinate
};

double distance(const Point& a, const Point& b) {
  return std::max(std::abs(a.u - b.u), std::abs(a.v - b.v));
}

Point clamp_point(Point p) {
  p.u = std::clamp(p.u, 0.0, 1.0);
  p.v = std::clamp(p.v, 0.0, 1.0);
  return p;
}

struct NelderMeadResult {
  Point best;
  double objective = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
};

// Standard reflect/expand/contract/shrink simplex on the unit square with
// projection onto the bounds.
template <typename Fn>
NelderMeadResult nelder_mead(Point start, Fn&& fn, int max_evals, double xtol, double ftol) {
  NelderMeadResult result;
  auto eval = [&](const Point& p) {
    ++result.evaluations;
    return fn(p);
  };

  std::array<Point, 3> x;
  x[0] = clamp_point(start);
  const double step = 0.1;
  x[1] = clamp_point({x[0].u + (x[0].u + step <= 1.0 ? step : -step), x[0].v});
  x[2] = clamp_point({x[0].u, x[0].v + (x[0].v + step <= 1.0 ? step : -step)});

  std::array<double, 3> f{eval(x[0]), eval(x[1]), eval(x[2])};

  while (result.evaluations < max_evals) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    const int lo = order[0], mid = order[1], hi = order[2];

    const double diameter = std::max({distance(x[0], x[1]), distance(x[0], x[2]),
                                      distance(x[1], x[2])});
    if (diameter < xtol || std::abs(f[hi] - f[lo]) < ftol) {
      result.converged = true;
      break;
    }

    const Point centroid{(x[lo].u + x[mid].u) / 2.0, (x[lo].v + x[mid].v) / 2.0};
    const Point reflected = clamp_point(
        {centroid.u + (centroid.u - x[hi].u), centroid.v + (centroid.v - x[hi].v)});
    const double fr = eval(reflected);

    if (fr < f[lo]) {
      const Point expanded = clamp_point(
          {centroid.u + 2.0 * (centroid.u - x[hi].u), centroid.v + 2.0 * (centroid.v - x[hi].v)});
      const double fe = eval(expanded);
      if (fe < fr) {
        x[hi] = expanded;
        f[hi] = fe;
      } else {
        x[hi] = reflected;
        f[hi] = fr;
      }
    } else if (fr < f[mid]) {
      x[hi] = reflected;
      f[hi] = fr;
    } else {
      const Point contracted = clamp_point(
          {centroid.u + 0.5 * (x[hi].u - centroid.u), centroid.v + 0.5 * (x[hi].v - centroid.v)});
      const double fc = eval(contracted);
      if (fc < f[hi]) {
        x[hi] = contracted;
        f[hi] = fc;
      } else {
        for (int i : {mid, hi}) {
          x[i] = clamp_point({x[lo].u + 0.5 * (x[i].u - x[lo].u),
                              x[lo].v + 0.5 * (x[i].v - x[lo].v)});
          f[i] = eval(x[i]);
        }
      }
    }
  }

  const int best = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
  result.best = x[best];
  result.objective = f[best];
  return result;
}

}  // namespace

EffectiveFit fit_effective(const BinnedHistogram& hist, const Spectrum& spec, int d,
                           const FitOptions& options) {
  EffectiveModel model(spec, d);

  std::vector<double> centers;
  std::vector<double> densities;
  double denom = 0.0;
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    if (hist.counts[i] == 0) continue;
    centers.push_back(hist.center(i));
    const double rho = hist.density(i);
    densities.push_back(rho);
    denom += rho * rho;
  }
  if (centers.empty()) throw DomainError("histogram has no occupied bins to fit");

  const double gamma_lo = options.gamma_lo;
  const double gamma_hi = options.gamma_hi;
  const double s_lo = 1.0;
  const double s_hi = options.s_hi > 0.0 ? options.s_hi : static_cast<double>(d) * d;
  if (!(gamma_hi > gamma_lo) || !(s_hi > s_lo)) throw DomainError("degenerate fit bounds");

  auto to_params = [&](const Point& p) {
    return std::pair<double, double>{gamma_lo + p.u * (gamma_hi - gamma_lo),
                                     s_lo + p.v * (s_hi - s_lo)};
  };
  auto objective = [&](const Point& p) {
    const auto [gamma, s] = to_params(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double diff = model.density(centers[i], gamma, s) - densities[i];
      acc += diff * diff;
    }
    return acc / denom;
  };

  const std::array<double, 7> gamma_starts{0.0, 1e-3, 1e-2, 1e-1, 0.3, 0.6, 0.9};
  const std::array<double, 6> s_starts{1.0, 2.0, 4.0, 8.0, static_cast<double>(d),
                                       static_cast<double>(d) * d};
  std::vector<Point> starts;
  for (double g : gamma_starts) {
    for (double s : s_starts) {
      Point p{(std::clamp(g, gamma_lo, gamma_hi) - gamma_lo) / (gamma_hi - gamma_lo),
              (std::clamp(s, s_lo, s_hi) - s_lo) / (s_hi - s_lo)};
      if (std::none_of(starts.begin(), starts.end(),
                       [&](const Point& q) { return distance(p, q) < 1e-12; })) {
        starts.push_back(p);
      }
    }
  }

  std::vector<NelderMeadResult> results(starts.size());
  parallel_for(starts.size(), options.threads, [&](std::size_t i) {
    results[i] = nelder_mead(starts[i], objective, options.max_evaluations_per_start,
                             options.simplex_tolerance, options.objective_tolerance);
  });

  long total_evals = 0;
  std::size_t winner = starts.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    total_evals += results[i].evaluations;
    if (winner == starts.size() || results[i].objective < results[winner].objective) {
      winner = i;
    }
  }

  const auto [gamma, s] = to_params(results[winner].best);
  const auto [start_gamma, start_s] = to_params(starts[winner]);
  EffectiveFit fit;
  fit.gamma_eff = gamma;
  fit.s_eff = s;
  fit.objective = results[winner].objective;
  fit.evaluations = total_evals;
  fit.converged = results[winner].converged;
  fit.start_gamma = start_gamma;
  fit.start_s = start_s;

  if (std::none_of(results.begin(), results.end(),
                   [](const NelderMeadResult& r) { return r.converged; })) {
    throw FitFailed("no optimizer start converged within the evaluation budget", fit);
  }
  return fit;
}

}  // namespace haardist
