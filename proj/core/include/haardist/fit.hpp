#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "haardist/analytic.hpp"
#include "haardist/empirics.hpp"
#include "haardist/spectrum.hpp"

namespace haardist {

struct EffectiveFit {
  double gamma_eff = 0.0;
  double s_eff = 1.0;
  double objective = 0.0;
  long evaluations = 0;   // across all starts
  bool converged = false;
  double start_gamma = 0.0;  // winning start point
  double start_s = 1.0;
};

/// No optimizer start met the convergence tolerances. Carries the best
/// point found anyway.
class FitFailed : public Error {
 public:
  FitFailed(const std::string& what, EffectiveFit best_point)
      : Error(what), best(best_point) {}
  EffectiveFit best;
};

struct FitOptions {
  double gamma_lo = 0.0;
  double gamma_hi = 0.99999999;
  double s_hi = 0.0;  // 0 = d^2
  int max_evaluations_per_start = 2000;
  double simplex_tolerance = 1e-10;     // diameter, in bound-normalized coordinates
  double objective_tolerance = 1e-16;   // best-vs-worst objective spread
  int threads = 1;
};

/// Noisy-overlap density model: the clean law for `spec` at environment
/// dimension s_eff, pushed through a global depolarizing channel of strength
/// gamma_eff. Built distributions are cached per quantized s_eff.
class EffectiveModel {
 public:
  EffectiveModel(Spectrum spec, int d);

  /// Model density at p; zero outside the transformed support.
  double density(double p, double gamma_eff, double s_eff) const;

  const Spectrum& spectrum() const { return spec_; }
  int dim() const { return d_; }
  double trace_over_dim() const { return trace_over_dim_; }

 private:
  const AnalyticDistribution& distribution_for(double s_eff) const;

  Spectrum spec_;
  int d_ = 0;
  double trace_over_dim_ = 0.0;
  mutable std::mutex mutex_;
  mutable std::map<long long, std::shared_ptr<AnalyticDistribution>> cache_;
};

/// Convenience wrapper around a throwaway EffectiveModel.
double effective_density(double p, const Spectrum& spec, int d, double gamma_eff, double s_eff);

/// Least-squares fit of (gamma_eff, s_eff) to a binned total distribution:
/// normalized density mismatch at geometric bin centers over nonempty bins,
/// minimized by bounded Nelder-Mead from a fixed multi-start grid.
EffectiveFit fit_effective(const BinnedHistogram& hist, const Spectrum& spec, int d,
                           const FitOptions& options = {});

}  // namespace haardist
