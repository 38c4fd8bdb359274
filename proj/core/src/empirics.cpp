#include "haardist/empirics.hpp"

#include <algorithm>
#include <cmath>

namespace haardist {

double BinnedHistogram::mass(std::size_t i) const {
  return total == 0 ? 0.0 : static_cast<double>(counts.at(i)) / static_cast<double>(total);
}

double BinnedHistogram::width(std::size_t i) const { return edges.at(i + 1) - edges.at(i); }

double BinnedHistogram::density(std::size_t i) const { return mass(i) / width(i); }

double BinnedHistogram::center(std::size_t i) const {
  return std::sqrt(edges.at(i) * edges.at(i + 1));
}

double BinnedHistogram::cumulative(std::size_t i) const {
  double acc = underflow_frac();
  for (std::size_t j = 0; j <= i; ++j) acc += mass(j);
  return acc;
}

double BinnedHistogram::underflow_frac() const {
  return total == 0 ? 0.0 : static_cast<double>(underflow) / static_cast<double>(total);
}

double BinnedHistogram::overflow_frac() const {
  return total == 0 ? 0.0 : static_cast<double>(overflow) / static_cast<double>(total);
}

std::vector<double> log_bins(int count, double lo, double hi) {
  if (count < 1) throw DomainError("bin count must be positive");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log bins need 0 < lo < hi");
  std::vector<double> edges(static_cast<std::size_t>(count) + 1);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i <= count; ++i) {
    edges[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i / count);
  }
  edges.front() = lo;
  edges.back() = hi;
  return edges;
}

BinnedHistogram bin_samples(const std::vector<double>& samples, std::vector<double> edges) {
  if (edges.size() < 2) throw DomainError("need at least two bin edges");
  if (!std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DomainError("bin edges must be strictly increasing");
  }
  BinnedHistogram hist;
  hist.edges = std::move(edges);
  hist.counts.assign(hist.edges.size() - 1, 0);
  const double lo = hist.edges.front();
  const double hi = hist.edges.back();
  for (double x : samples) {
    ++hist.total;
    if (x == 0.0) {
      ++hist.zeros;
      ++hist.underflow;
      continue;
    }
    if (x < lo) {
      ++hist.underflow;
      continue;
    }
    if (x > hi) {
      ++hist.overflow;
      continue;
    }
    if (x == hi) {
      ++hist.counts.back();
      continue;
    }
    auto it = std::upper_bound(hist.edges.begin(), hist.edges.end(), x);
    ++hist.counts[static_cast<std::size_t>(it - hist.edges.begin() - 1)];
  }
  return hist;
}

double empirical_cdf(const BinnedHistogram& hist, double x) {
  if (x < hist.edges.front()) return hist.underflow_frac();
  double acc = hist.underflow_frac();
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    if (hist.edges[i] <= x) {
      acc += hist.mass(i);
    } else {
      break;
    }
  }
  return acc;
}

double ks_metric(const BinnedHistogram& hist, const std::function<double(double)>& cdf) {
  double worst = 0.0;
  double cum = hist.underflow_frac();
  double f_left = cdf(hist.edges.front());
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    cum += hist.mass(i);
    const double f_right = cdf(hist.edges[i + 1]);
    worst = std::max(worst, std::abs(cum - f_left) + std::abs(f_right - f_left));
    f_left = f_right;
  }
  return worst;
}

long chebyshev_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) throw DomainError("epsilon and delta must be positive");
  double m = 1.0 / (2.0 * delta * epsilon);
  return static_cast<long>(std::ceil(m * m - 1e-9));
}

}  // namespace haardist
