#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "haardist/qsim.hpp"
#include "haardist/rational.hpp"
#include "haardist/spectrum.hpp"

namespace haardist {

enum class PovmKind { pvm, sic, nonsic };

PovmKind povm_kind_from_string(const std::string& name);
std::string to_string(PovmKind kind);

/// Tensor-product measurement set over n qubits. Each element is
/// weight * (local_{mu_0} x ... x local_{mu_(n-1)}) where mu_i is digit i
/// of the element index in base locals().size(), digit 0 most significant.
///
///   pvm    - computational basis projectors, weight 1
///   sic    - symmetric informationally complete tetrahedron states, weight 1/2^n
///   nonsic - {|0>, |+>, |+i>} projectors plus the complement operator
///            (3I - X - Y - Z)/2, weight 1/3^n
class MeasurementSet {
 public:
  static MeasurementSet build(PovmKind kind, int n);

  PovmKind kind() const { return kind_; }
  int qubits() const { return n_; }
  int dim() const { return 1 << n_; }
  long size() const;  // number of elements
  double weight() const { return weight_; }
  const Rational& weight_exact() const { return weight_exact_; }
  const std::vector<Eigen::Matrix2cd>& locals() const { return locals_; }

  /// Dense element matrix; intended for small n.
  Eigen::MatrixXcd element(long mu) const;

  /// Eigenvalues of element mu with multiplicities.
  Spectrum element_spectrum(long mu) const;

  /// tr(element * rho) for every element, in element-index order.
  std::vector<double> probabilities(const DensityState& state) const;

 private:
  PovmKind kind_ = PovmKind::pvm;
  int n_ = 0;
  double weight_ = 1.0;
  Rational weight_exact_ = 1;
  std::vector<Eigen::Matrix2cd> locals_;
  // per local: the two eigenvalues, exact when available
  std::vector<std::array<SpectrumEntry, 2>> local_eigensystems_;
};

/// Concatenated probabilities of every state under every element: the raw
/// sample set behind a total distribution histogram.
std::vector<double> total_distribution_samples(const std::vector<DensityState>& states,
                                               const MeasurementSet& set, int threads = 1);

}  // namespace haardist
