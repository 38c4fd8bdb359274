#include "haardist/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace haardist {

namespace {

double domain_tolerance(double sigma, double lambda) {
  return 1e-12 * std::max({1.0, std::abs(sigma), std::abs(lambda)});
}

void check_beta_args(int l, int d, double s) {
  if (d < 2) throw DomainError("projector law needs dimension d >= 2");
  if (l < 1 || l > d - 1) throw DomainError("projector rank must satisfy 1 <= l <= d - 1");
  if (!(s >= 1.0) || !std::isfinite(s)) throw DomainError("environment dimension must be >= 1");
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b,
                               size_t keep) {
  std::vector<Rational> out(std::min(keep, a.size() + b.size() - 1), Rational(0));
  for (size_t i = 0; i < a.size() && i < keep; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < keep; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

long log2_magnitude(const Rational& q) {
  if (q == 0) return std::numeric_limits<long>::min() / 4;
  long n = static_cast<long>(mpz_sizeinbase(mpq_numref(q.get_mpq_t()), 2));
  long d = static_cast<long>(mpz_sizeinbase(mpq_denref(q.get_mpq_t()), 2));
  return n - d + 1;
}

Rational exact_eigenvalue(const SpectrumEntry& e) {
  return e.exact ? *e.exact : rational_from_double(e.value);
}

int sign_of(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

// Count of permutation cycle types grows past usefulness quickly.
constexpr int kOracleMaxMoment = 8;

}  // namespace

double beta_density(double x, int l, int d, double s) {
  check_beta_args(l, d, s);
  if (x < -1e-12 || x > 1.0 + 1e-12) throw DomainError("beta density argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double a = l * s;
  double b = (d - l) * s;
  double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  double lt = 0.0;
  if (x == 0.0) {
    if (a > 1.0) return 0.0;
  } else {
    lt += (a - 1.0) * std::log(x);
  }
  if (x == 1.0) {
    if (b > 1.0) return 0.0;
  } else {
    lt += (b - 1.0) * std::log1p(-x);
  }
  return std::exp(log_norm + lt);
}

double beta_moment(int t, int l, int d, double s) {
  check_beta_args(l, d, s);
  if (t < 0) throw DomainError("moment order must be nonnegative");
  double a = l * s;
  double n = d * s;
  return std::exp(std::lgamma(n) - std::lgamma(a) + std::lgamma(a + t) - std::lgamma(n + t));
}

double beta_mode(int l, int d, double s) {
  check_beta_args(l, d, s);
  if (!(d * s > 2.0)) throw DomainError("interior mode needs d s > 2");
  return (l * s - 1.0) / (d * s - 2.0);
}

double AnalyticDistribution::point_mass_location() const {
  if (!is_point_mass()) throw DomainError("distribution is not a point mass");
  return lambda_;
}

double AnalyticDistribution::beta_alpha() const {
  if (kind_ != DistributionKind::beta) throw DomainError("not a Beta-form distribution");
  return alpha_;
}

double AnalyticDistribution::beta_beta() const {
  if (kind_ != DistributionKind::beta) throw DomainError("not a Beta-form distribution");
  return beta_;
}

double AnalyticDistribution::density(double x) const {
  double tol = domain_tolerance(sigma_, lambda_);
  if (x < sigma_ - tol || x > lambda_ + tol) {
    throw DomainError("density argument outside the support");
  }
  x = std::clamp(x, sigma_, lambda_);
  switch (kind_) {
    case DistributionKind::point_mass:
      return x == lambda_ ? std::numeric_limits<double>::infinity() : 0.0;
    case DistributionKind::beta: {
      double w = lambda_ - sigma_;
      double z = (x - sigma_) / w;
      z = std::clamp(z, 0.0, 1.0);
      double lt = 0.0;
      if (z == 0.0) {
        if (alpha_ > 1.0) return 0.0;
      } else {
        lt += (alpha_ - 1.0) * std::log(z);
      }
      if (z == 1.0) {
        if (beta_ > 1.0) return 0.0;
      } else {
        lt += (beta_ - 1.0) * std::log1p(-z);
      }
      return std::exp(log_norm_ + lt) / w;
    }
    case DistributionKind::power_sum:
      return power_sum_density(x);
  }
  throw DomainError("corrupt distribution kind");
}

double AnalyticDistribution::cdf(double x) const {
  if (x >= lambda_) return 1.0;
  if (x <= sigma_) return 0.0;
  switch (kind_) {
    case DistributionKind::point_mass:
      return x >= lambda_ ? 1.0 : 0.0;
    case DistributionKind::beta: {
      double z = std::clamp((x - sigma_) / (lambda_ - sigma_), 0.0, 1.0);
      return boost::math::ibeta(alpha_, beta_, z);
    }
    case DistributionKind::power_sum:
      return power_sum_cdf(x);
  }
  throw DomainError("corrupt distribution kind");
}

double AnalyticDistribution::power_sum_density(double x) const {
  Rational xq = rational_from_double(x);
  BigFloat acc = BigFloat::from_long(0, precision_bits_);
  for (size_t i = 0; i < terms_.size(); ++i) {
    Rational uq = locations_exact_[i] - xq;
    int sgn = sign_of(uq);
    if (sgn == 0) continue;
    Rational au = abs(uq);
    BigFloat mag = BigFloat::from_rational(au, precision_bits_)
                       .pow_ui(static_cast<unsigned long>(terms_[i].power - 1));
    BigFloat contrib = terms_[i].coefficient * mag;
    if (sgn < 0 && (terms_[i].power & 1L)) contrib = -contrib;
    acc += contrib;
  }
  return acc.to_double();
}

double AnalyticDistribution::power_sum_cdf(double x) const {
  Rational xq = rational_from_double(x);
  BigFloat acc = endpoint_sum_;
  for (size_t i = 0; i < terms_.size(); ++i) {
    Rational uq = locations_exact_[i] - xq;
    int sgn = sign_of(uq);
    if (sgn == 0) continue;
    Rational au = abs(uq);
    BigFloat mag = BigFloat::from_rational(au, precision_bits_)
                       .pow_ui(static_cast<unsigned long>(terms_[i].power));
    BigFloat contrib = coeff_over_power_[i] * mag;
    // minus sign(u)^(power + 1) |u|^power, folded into one factor
    bool negate = (sgn > 0) || (terms_[i].power & 1L);
    if (negate) contrib = -contrib;
    acc += contrib;
  }
  return acc.to_double();
}

AnalyticDistribution build_distribution(const Spectrum& spec, EnvDim s,
                                        const BuildOptions& options) {
  if (spec.empty()) throw DomainError("cannot build a distribution from an empty spectrum");

  AnalyticDistribution dist;
  dist.spectrum_ = spec;
  dist.s_ = s.value();
  dist.sigma_ = spec.min_value();
  dist.lambda_ = spec.max_value();

  const int cnt = spec.distinct_count();
  if (cnt == 1) {
    dist.kind_ = DistributionKind::point_mass;
    return dist;
  }

  if (cnt == 2 && !options.force_power_sum) {
    dist.kind_ = DistributionKind::beta;
    dist.alpha_ = spec.entries().back().multiplicity * s.value();
    dist.beta_ = spec.entries().front().multiplicity * s.value();
    dist.log_norm_ = std::lgamma(dist.alpha_ + dist.beta_) - std::lgamma(dist.alpha_) -
                     std::lgamma(dist.beta_);
    return dist;
  }

  const int si = s.as_integer();
  dist.kind_ = DistributionKind::power_sum;

  const auto& es = spec.entries();
  std::vector<Rational> xi(cnt);
  std::vector<long> n(cnt);
  long total = 0;
  for (int i = 0; i < cnt; ++i) {
    xi[i] = exact_eigenvalue(es[i]);
    n[i] = static_cast<long>(es[i].multiplicity) * si;
    total += n[i];
  }
  const Rational sigma_q = xi.front();

  struct RawTerm {
    int eig_index;
    long power;
    Rational pi;
  };
  std::vector<RawTerm> raw;
  raw.reserve(static_cast<size_t>(total));

  const Integer gamma_total = factorial(static_cast<unsigned long>(total - 1));
  for (int a = 0; a < cnt; ++a) {
    const size_t keep = static_cast<size_t>(n[a]);
    std::vector<Rational> conv{Rational(1)};
    for (int z = 0; z < cnt; ++z) {
      if (z == a) continue;
      std::vector<Rational> g(keep);
      Rational inv = Rational(1) / (xi[a] - xi[z]);
      Rational p = pow_rational(inv, static_cast<unsigned long>(n[z]));
      for (size_t j = 0; j < keep; ++j) {
        g[j] = Rational(binomial(static_cast<unsigned long>(n[z] + j - 1),
                                 static_cast<unsigned long>(j))) *
               p;
        p *= inv;
      }
      conv = poly_mul(conv, g, keep);
    }
    for (long l = 0; l < n[a]; ++l) {
      Rational ratio =
          Rational(gamma_total) / Rational(factorial(static_cast<unsigned long>(n[a] - l - 1)) *
                                           factorial(static_cast<unsigned long>(total - n[a] + l - 1)));
      Rational pi = ratio * conv[static_cast<size_t>(l)] / 2;
      if (l & 1L) pi = -pi;
      raw.push_back({a, total - n[a] + l, pi});
    }
  }

  // Size the working precision from the largest term the evaluation can see.
  const double width = dist.lambda_ - dist.sigma_;
  const double log2_width = width > 1.0 ? std::log2(width) : 0.0;
  long max_term_log2 = 0;
  for (const auto& t : raw) {
    long b = log2_magnitude(t.pi) + static_cast<long>(std::ceil(t.power * log2_width));
    max_term_log2 = std::max(max_term_log2, b);
  }
  long needed = std::max<long>(options.precision_bits, max_term_log2 + 64);
  if (needed > options.max_precision_bits) {
    throw PrecisionExhausted("coefficient table spans ~2^" + std::to_string(max_term_log2) +
                             ", beyond the " + std::to_string(options.max_precision_bits) +
                             "-bit precision cap");
  }
  const int bits = static_cast<int>(needed);
  dist.precision_bits_ = bits;

  Rational endpoint_q(0);
  dist.terms_.reserve(raw.size());
  dist.locations_exact_.reserve(raw.size());
  dist.coeff_over_power_.reserve(raw.size());
  for (const auto& t : raw) {
    PowerSumTerm term;
    term.location = es[t.eig_index].value;
    term.power = t.power;
    term.coefficient_exact = t.pi;
    term.coefficient = BigFloat::from_rational(t.pi, bits);
    dist.terms_.push_back(std::move(term));
    dist.locations_exact_.push_back(xi[t.eig_index]);
    Rational over = t.pi / t.power;
    dist.coeff_over_power_.push_back(BigFloat::from_rational(over, bits));
    endpoint_q += over * pow_rational(xi[t.eig_index] - sigma_q,
                                      static_cast<unsigned long>(t.power));
  }
  dist.endpoint_sum_ = BigFloat::from_rational(endpoint_q, bits);

  double norm = dist.power_sum_cdf(dist.lambda_);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw PrecisionExhausted("distribution normalizes to " + std::to_string(norm) +
                             " at the configured precision");
  }
  return dist;
}

double shifted_scaled_density(const AnalyticDistribution& dist, double y, double shift,
                              double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw DomainError("shift/scale must be finite with positive scale");
  }
  return dist.density((y - shift) / scale) / scale;
}

namespace {

struct ExactSpectrumView {
  std::vector<Rational> xi;
  std::vector<long> n;
  long total = 0;
};

ExactSpectrumView exact_view(const Spectrum& spec, int si) {
  ExactSpectrumView v;
  const auto& es = spec.entries();
  v.xi.resize(es.size());
  v.n.resize(es.size());
  for (size_t i = 0; i < es.size(); ++i) {
    v.xi[i] = exact_eigenvalue(es[i]);
    v.n[i] = static_cast<long>(es[i].multiplicity) * si;
    v.total += v.n[i];
  }
  return v;
}

void check_moment_args(const Spectrum& spec, int t_max) {
  if (spec.empty()) throw DomainError("cannot compute moments of an empty spectrum");
  if (t_max < 0) throw DomainError("moment order must be nonnegative");
}

}  // namespace

MomentVector moments_closed_form(const Spectrum& spec, EnvDim s, int t_max) {
  check_moment_args(spec, t_max);
  const int si = s.as_integer();
  MomentVector mv{spec, s.value(), std::vector<double>(static_cast<size_t>(t_max) + 1, 0.0)};
  mv.values[0] = 1.0;
  if (t_max == 0) return mv;

  const auto v = exact_view(spec, si);
  const int cnt = spec.distinct_count();
  if (cnt == 1) {
    Rational p(1);
    for (int t = 1; t <= t_max; ++t) {
      p *= v.xi[0];
      mv.values[static_cast<size_t>(t)] = p.get_d();
    }
    return mv;
  }

  // t-independent partial-fraction sums, one series per distinct eigenvalue
  std::vector<std::vector<Rational>> series(static_cast<size_t>(cnt));
  for (int a = 0; a < cnt; ++a) {
    if (v.xi[a] == 0) continue;
    const size_t keep = static_cast<size_t>(v.n[a]);
    std::vector<Rational> conv{Rational(1)};
    for (int z = 0; z < cnt; ++z) {
      if (z == a) continue;
      std::vector<Rational> g(keep);
      Rational inv = Rational(1) / (v.xi[a] - v.xi[z]);
      Rational head = pow_rational(v.xi[a], static_cast<unsigned long>(v.n[z])) *
                      pow_rational(inv, static_cast<unsigned long>(v.n[z]));
      Rational zp(1);
      for (size_t j = 0; j < keep; ++j) {
        g[j] = Rational(binomial(static_cast<unsigned long>(v.n[z] + j - 1),
                                 static_cast<unsigned long>(j))) *
               head * zp;
        head *= inv;
        zp *= v.xi[z];
      }
      conv = poly_mul(conv, g, keep);
    }
    series[static_cast<size_t>(a)] = std::move(conv);
  }

  const Integer gamma_total = factorial(static_cast<unsigned long>(v.total - 1));
  for (int t = 1; t <= t_max; ++t) {
    Rational xt(0);
    const Integer gamma_total_t = factorial(static_cast<unsigned long>(v.total + t - 1));
    for (int a = 0; a < cnt; ++a) {
      if (series[static_cast<size_t>(a)].empty()) continue;
      Rational xp = pow_rational(v.xi[a], static_cast<unsigned long>(t));
      for (long l = 0; l < v.n[a]; ++l) {
        Rational chi = Rational(gamma_total *
                                factorial(static_cast<unsigned long>(v.n[a] - l + t - 1))) /
                       Rational(factorial(static_cast<unsigned long>(v.n[a] - l - 1)) *
                                gamma_total_t);
        chi *= series[static_cast<size_t>(a)][static_cast<size_t>(l)];
        if (l & 1L) chi = -chi;
        xt += chi * xp;
      }
    }
    mv.values[static_cast<size_t>(t)] = xt.get_d();
  }
  return mv;
}

MomentVector moments_newton(const Spectrum& spec, EnvDim s, int t_max) {
  check_moment_args(spec, t_max);
  const int si = s.as_integer();
  MomentVector mv{spec, s.value(), std::vector<double>(static_cast<size_t>(t_max) + 1, 0.0)};
  mv.values[0] = 1.0;
  if (t_max == 0) return mv;

  const auto& es = spec.entries();
  long total = static_cast<long>(spec.dimension()) * si;

  std::vector<double> p(static_cast<size_t>(t_max) + 1, 0.0);
  for (int k = 1; k <= t_max; ++k) {
    double pk = 0;
    for (const auto& e : es) pk += e.multiplicity * si * std::pow(e.value, k);
    p[static_cast<size_t>(k)] = pk;
  }

  std::vector<double> h(static_cast<size_t>(t_max) + 1, 0.0);
  h[0] = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    double acc = 0;
    for (int k = 1; k <= t; ++k) acc += p[static_cast<size_t>(k)] * h[static_cast<size_t>(t - k)];
    h[static_cast<size_t>(t)] = acc / t;
    double norm = Rational(binomial(static_cast<unsigned long>(total + t - 1),
                                    static_cast<unsigned long>(t)))
                      .get_d();
    mv.values[static_cast<size_t>(t)] = h[static_cast<size_t>(t)] / norm;
  }
  return mv;
}

namespace {

// Visit every cycle type of S_t as (part length -> count) pairs.
void for_each_partition(int remaining, int max_part, std::vector<std::pair<int, int>>& current,
                        const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  if (remaining == 0) {
    visit(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    int limit = remaining / part;
    for (int count = limit; count >= 1; --count) {
      current.emplace_back(part, count);
      for_each_partition(remaining - part * count, part - 1, current, visit);
      current.pop_back();
    }
  }
}

}  // namespace

double moments_permutation_oracle(const Spectrum& spec, EnvDim s, int t) {
  check_moment_args(spec, t);
  if (t == 0) return 1.0;
  if (t > kOracleMaxMoment) {
    throw OracleTooLarge("permutation oracle supports moments up to t = " +
                         std::to_string(kOracleMaxMoment));
  }
  const int si = s.as_integer();
  const auto v = exact_view(spec, si);

  std::vector<Rational> zeta(static_cast<size_t>(t) + 1, Rational(0));
  for (int k = 1; k <= t; ++k) {
    Rational acc(0);
    for (size_t i = 0; i < v.xi.size(); ++i) {
      acc += Rational(v.n[i]) * pow_rational(v.xi[i], static_cast<unsigned long>(k));
    }
    zeta[static_cast<size_t>(k)] = acc;
  }

  Rational total(0);
  std::vector<std::pair<int, int>> current;
  for_each_partition(t, t, current, [&](const std::vector<std::pair<int, int>>& parts) {
    Rational prod(1);
    for (const auto& [k, count] : parts) {
      Rational base = zeta[static_cast<size_t>(k)] / k;
      prod *= pow_rational(base, static_cast<unsigned long>(count));
      prod /= Rational(factorial(static_cast<unsigned long>(count)));
    }
    total += prod;
  });

  total /= Rational(binomial(static_cast<unsigned long>(v.total + t - 1),
                             static_cast<unsigned long>(t)));
  return total.get_d();
}

}  // namespace haardist
