#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "haardist/errors.hpp"
#include "haardist/rational.hpp"

namespace haardist {

/// One distinct eigenvalue and the dimension of its eigenspace.
/// `exact` is set whenever the value is known as an exact rational.
struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;
  std::optional<Rational> exact;
};

/// Spectrum of a Hermitian observable: distinct eigenvalues, ascending,
/// with multiplicities. Construction sorts and merges near-degenerate
/// values (|a - b| <= 1e-12 * max(1, |a|)) by multiplicity-weighted mean.
class Spectrum {
 public:
  Spectrum() = default;

  static Spectrum from_values(const std::vector<std::pair<double, int>>& eigs);
  static Spectrum from_rationals(const std::vector<std::pair<Rational, int>>& eigs);
  static Spectrum from_entries(std::vector<SpectrumEntry> entries);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  int dimension() const;       // d, total Hilbert space dimension
  int distinct_count() const;  // number of distinct eigenvalues
  int rank() const;            // d minus the dimension of the null space
  double trace() const;
  std::optional<Rational> trace_exact() const;
  double min_value() const;
  double max_value() const;
  bool all_exact() const;

  bool operator==(const Spectrum& other) const;

 private:
  std::vector<SpectrumEntry> entries_;
};

/// Environment dimension. Integral for physical purifications, real for
/// the continuous relaxation used when fitting.
class EnvDim {
 public:
  EnvDim(int s);  // NOLINT: implicit by design
  explicit EnvDim(double s);

  double value() const { return s_; }
  bool is_integer() const;
  int as_integer() const;

 private:
  double s_;
};

struct NormalizedSpectrum {
  Spectrum spectrum;  // affinely mapped onto [0, 1]
  double shift;       // original min eigenvalue
  double scale;       // original max minus min
};

/// Affine map of all eigenvalues onto [0, 1]. Requires two distinct values.
NormalizedSpectrum normalize(const Spectrum& spec);

/// Spectrum of the observable pushed through a global depolarizing channel
/// of strength gamma: x -> (1 - gamma) x + gamma tr / d.
Spectrum depolarize_spectrum(const Spectrum& spec, double gamma);

struct CircuitNoiseParams {
  double gamma_k;  // accumulated depolarization after k layers
  int s_k;         // matching environment dimension
};

/// Effective (gamma, s) pair describing a depth-k noisy circuit ensemble.
CircuitNoiseParams fig1_parameterization(double gamma, int k);

}  // namespace haardist
