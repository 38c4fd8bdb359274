#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "haardist/errors.hpp"

namespace haardist {

/// Histogram over fixed bins. Bin i covers [edges[i], edges[i+1]), the last
/// bin is closed on the right. Exact zeros land in the underflow counter.
struct BinnedHistogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;  // samples below edges.front(), zeros included
  std::uint64_t zeros = 0;      // exact zeros, a subset of underflow
  std::uint64_t overflow = 0;   // samples above edges.back()
  std::uint64_t total = 0;      // every sample offered

  std::size_t bins() const { return counts.size(); }
  double mass(std::size_t i) const;
  double width(std::size_t i) const;
  double density(std::size_t i) const;  // mass / width
  double center(std::size_t i) const;   // geometric midpoint
  double cumulative(std::size_t i) const;
  double underflow_frac() const;
  double overflow_frac() const;
};

/// count + 1 geometrically spaced edges from lo to hi.
std::vector<double> log_bins(int count, double lo, double hi);

BinnedHistogram bin_samples(const std::vector<double>& samples, std::vector<double> edges);

/// Right-continuous binned empirical CDF: all of a bin's mass counts from
/// the bin's left edge on.
double empirical_cdf(const BinnedHistogram& hist, double x);

/// Binned one-sided Kolmogorov-Smirnov bound: for each bin, the deviation at
/// the left edge plus the reference CDF increment across the bin; maximized
/// over bins. Upper-bounds the classical KS distance of the binned sample.
double ks_metric(const BinnedHistogram& hist, const std::function<double(double)>& cdf);

/// Samples needed so the empirical CDF is within epsilon of the truth with
/// probability 1 - delta at a fixed point (Chebyshev bound).
long chebyshev_samples(double epsilon, double delta);

}  // namespace haardist
