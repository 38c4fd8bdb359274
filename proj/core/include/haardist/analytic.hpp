#pragma once

#include <vector>

#include "haardist/bigfloat.hpp"
#include "haardist/spectrum.hpp"

namespace haardist {

/// Density at x of the overlap of a rank-l projector (dimension d, environment
/// dimension s) with a Haar-random mixed state: a Beta(l s, (d - l) s) law.
double beta_density(double x, int l, int d, double s);

/// t-th moment of the projector overlap law.
double beta_moment(int t, int l, int d, double s);

/// Interior maximum (l s - 1) / (d s - 2); requires d s > 2.
double beta_mode(int l, int d, double s);

enum class DistributionKind { point_mass, beta, power_sum };

/// One term pi * sign(xi - x) (xi - x)^(power - 1) of a piecewise-polynomial
/// density. `power` is the exponent appearing in the antiderivative.
struct PowerSumTerm {
  double location = 0.0;
  long power = 0;
  Rational coefficient_exact;
  BigFloat coefficient;
};

struct BuildOptions {
  int precision_bits = 256;        // working precision for evaluation
  int max_precision_bits = 16384;  // cap before giving up
  bool force_power_sum = false;    // bypass the two-eigenvalue Beta shortcut
};

/// Distribution of tr(Pi rho) over Haar-random mixed states rho for a fixed
/// observable spectrum. Supported on [min eigenvalue, max eigenvalue].
class AnalyticDistribution {
 public:
  DistributionKind kind() const { return kind_; }
  const Spectrum& spectrum() const { return spectrum_; }
  double env_dim() const { return s_; }
  double min_value() const { return sigma_; }
  double max_value() const { return lambda_; }

  /// Probability density. Returns +infinity exactly at a point mass.
  double density(double x) const;
  /// Cumulative distribution, F(min) = 0 and F(max) = 1.
  double cdf(double x) const;

  bool is_point_mass() const { return kind_ == DistributionKind::point_mass; }
  double point_mass_location() const;

  /// Beta-branch exponent parameters (alpha, beta).
  double beta_alpha() const;
  double beta_beta() const;

  const std::vector<PowerSumTerm>& terms() const { return terms_; }
  int precision_bits() const { return precision_bits_; }

 private:
  friend AnalyticDistribution build_distribution(const Spectrum&, EnvDim, const BuildOptions&);

  Spectrum spectrum_;
  double s_ = 1.0;
  DistributionKind kind_ = DistributionKind::point_mass;
  double sigma_ = 0.0;
  double lambda_ = 0.0;

  // beta branch
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double log_norm_ = 0.0;

  // power-sum branch
  std::vector<PowerSumTerm> terms_;
  std::vector<Rational> locations_exact_;
  std::vector<BigFloat> coeff_over_power_;  // pi / power, for the CDF
  BigFloat endpoint_sum_;                   // sum of pi / power * (xi - sigma)^power
  int precision_bits_ = 0;

  double power_sum_density(double x) const;
  double power_sum_cdf(double x) const;
};

/// Construct the overlap distribution for an arbitrary spectrum.
/// One distinct eigenvalue gives a point mass, two give a scaled Beta law,
/// more give the full piecewise-polynomial form with exact coefficients.
/// Non-integral environment dimensions are supported for the first two cases.
AnalyticDistribution build_distribution(const Spectrum& spec, EnvDim s,
                                        const BuildOptions& options = {});

/// Density of y = shift + scale * x when x follows `dist`.
double shifted_scaled_density(const AnalyticDistribution& dist, double y, double shift,
                              double scale);

struct MomentVector {
  Spectrum spectrum;
  double s = 1.0;
  std::vector<double> values;  // x_0 .. x_T with x_0 = 1
};

/// Moments from the partial-fraction closed form, exact internally.
MomentVector moments_closed_form(const Spectrum& spec, EnvDim s, int t_max);

/// Moments from power sums via the complete homogeneous symmetric
/// polynomial recurrence, in double precision.
MomentVector moments_newton(const Spectrum& spec, EnvDim s, int t_max);

/// Brute-force reference: cycle-type sum over the symmetric group S_t.
/// Exact internally; refuses t > 8.
double moments_permutation_oracle(const Spectrum& spec, EnvDim s, int t);

}  // namespace haardist
