#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "haardist/analytic.hpp"
#include "haardist/spectrum.hpp"
#include "oracles.hpp"

using namespace haardist;

namespace {

Spectrum projector_spectrum(int l, int d) {
  return Spectrum::from_rationals({{Rational(0), d - l}, {Rational(1), l}});
}

}  // namespace

TEST_CASE("projector density closed form spot values") {
  // l = 1, d = 5, s = 1: P(x) = 4 (1 - x)^3
  CHECK(beta_density(0.0, 1, 5, 1) == doctest::Approx(4.0));
  CHECK(beta_density(0.5, 1, 5, 1) == doctest::Approx(4.0 * 0.125));
  // l = 1, d = 2, s = 1 is uniform on [0, 1]
  CHECK(beta_density(0.3, 1, 2, 1) == doctest::Approx(1.0));
  CHECK(beta_density(0.9, 1, 2, 1) == doctest::Approx(1.0));
}

TEST_CASE("projector density normalizes and peaks at the mode") {
  for (auto [l, d, s] : std::vector<std::array<int, 3>>{
           {1, 4, 1}, {2, 5, 2}, {3, 8, 3}, {1, 2, 2}}) {
    auto f = [&, l = l, d = d, s = s](double x) {
      return beta_density(x, l, d, static_cast<double>(s));
    };
    const double total = testsupport::integrate_piecewise(f, {0.0, 1.0});
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    if (l * s > 1 && (d - l) * s > 1) {
      const double mode = beta_mode(l, d, s);
      const double at_mode = f(mode);
      for (double x : {mode - 0.05, mode + 0.05}) {
        if (x > 0 && x < 1) CHECK(at_mode >= f(x));
      }
    }
  }
}

TEST_CASE("projector moments") {
  CHECK(beta_moment(1, 3, 8, 2) == doctest::Approx(3.0 / 8.0));
  CHECK(beta_moment(2, 1, 2, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(beta_moment(0, 2, 6, 3) == doctest::Approx(1.0));
  // first moment is always l / d, independent of s
  for (double s : {1.0, 2.0, 2.5, 7.0}) {
    CHECK(beta_moment(1, 3, 7, s) == doctest::Approx(3.0 / 7.0));
  }
}

TEST_CASE("projector law argument validation") {
  CHECK_THROWS_AS(beta_density(0.5, 0, 4, 1), DomainError);
  CHECK_THROWS_AS(beta_density(0.5, 4, 4, 1), DomainError);
  CHECK_THROWS_AS(beta_density(1.5, 1, 4, 1), DomainError);
  CHECK_THROWS_AS(beta_density(0.5, 1, 4, 0.5), DomainError);
  CHECK_THROWS_AS(beta_mode(1, 2, 1), DomainError);
}

TEST_CASE("single eigenvalue builds a point mass") {
  auto dist = build_distribution(Spectrum::from_rationals({{Rational(7, 10), 5}}), 2);
  CHECK(dist.kind() == DistributionKind::point_mass);
  CHECK(dist.point_mass_location() == doctest::Approx(0.7));
  CHECK(std::isinf(dist.density(0.7)));
  CHECK(dist.cdf(0.7) == 1.0);
}

TEST_CASE("two distinct eigenvalues build a scaled projector law") {
  auto dist = build_distribution(projector_spectrum(1, 4), 2);
  REQUIRE(dist.kind() == DistributionKind::beta);
  CHECK(dist.beta_alpha() == doctest::Approx(2.0));
  CHECK(dist.beta_beta() == doctest::Approx(6.0));
  for (double x : {0.01, 0.1, 0.25, 0.5, 0.8, 0.99}) {
    CHECK(dist.density(x) == doctest::Approx(beta_density(x, 1, 4, 2)).epsilon(1e-12));
  }
  CHECK(dist.cdf(0.0) == doctest::Approx(0.0));
  CHECK(dist.cdf(1.0) == doctest::Approx(1.0));
}

TEST_CASE("two-point spectrum away from {0, 1} is an affine image of the projector law") {
  auto spec = Spectrum::from_rationals({{Rational(1, 5), 1}, {Rational(7, 10), 1}});
  auto dist = build_distribution(spec, 1);
  REQUIRE(dist.kind() == DistributionKind::beta);
  // uniform on [0.2, 0.7]
  CHECK(dist.density(0.45) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dist.cdf(0.45) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.cdf(0.2) == doctest::Approx(0.0));
  CHECK(dist.cdf(0.7) == doctest::Approx(1.0));
}

TEST_CASE("general form agrees with the projector shortcut on two-point spectra") {
  BuildOptions force;
  force.force_power_sum = true;
  for (auto [l, d, s] : std::vector<std::array<int, 3>>{{1, 4, 1}, {2, 4, 2}, {3, 6, 1}}) {
    auto spec = projector_spectrum(l, d);
    auto shortcut = build_distribution(spec, s);
    auto general = build_distribution(spec, s, force);
    REQUIRE(general.kind() == DistributionKind::power_sum);
    for (double x : {0.02, 0.2, 0.5, 0.77, 0.98}) {
      CHECK(general.density(x) == doctest::Approx(shortcut.density(x)).epsilon(1e-10));
      CHECK(general.cdf(x) == doctest::Approx(shortcut.cdf(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("three equally spaced simple eigenvalues give the tent density") {
  auto spec = Spectrum::from_rationals(
      {{Rational(0), 1}, {Rational(1, 2), 1}, {Rational(1), 1}});
  auto dist = build_distribution(spec, 1);
  REQUIRE(dist.kind() == DistributionKind::power_sum);

  // density 4x on [0, 1/2], 4(1-x) on [1/2, 1]
  CHECK(dist.density(0.5) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dist.density(0.25) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.density(0.75) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.density(0.0) == doctest::Approx(0.0));
  CHECK(dist.density(1.0) == doctest::Approx(0.0));

  CHECK(dist.cdf(0.0) == doctest::Approx(0.0));
  CHECK(dist.cdf(0.25) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(dist.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  // exact coefficients 2, -4, 2 with quadratic antiderivative power
  REQUIRE(dist.terms().size() == 3);
  std::vector<Rational> coeffs;
  for (const auto& term : dist.terms()) {
    CHECK(term.power == 2);
    coeffs.push_back(term.coefficient_exact);
  }
  CHECK(coeffs[0] == Rational(2));
  CHECK(coeffs[1] == Rational(-4));
  CHECK(coeffs[2] == Rational(2));
}

TEST_CASE("forced general form reproduces the uniform density") {
  BuildOptions force;
  force.force_power_sum = true;
  auto dist = build_distribution(projector_spectrum(1, 2), 1, force);
  REQUIRE(dist.kind() == DistributionKind::power_sum);
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    CHECK(dist.density(x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist.cdf(x) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("general densities normalize and match their own CDF") {
  std::mt19937_64 rng(23);
  int built = 0;
  while (built < 8) {
    auto spec = testsupport::random_rational_spectrum(rng, 6, 4);
    if (spec.distinct_count() < 3) continue;
    const int s = std::uniform_int_distribution<int>(1, 3)(rng);
    auto dist = build_distribution(spec, s);
    ++built;

    const double total = testsupport::moment_by_quadrature(dist, 0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dist.cdf(dist.max_value()) == doctest::Approx(1.0).epsilon(1e-9));

    const double sigma = dist.min_value();
    const double lambda = dist.max_value();
    for (double frac : {0.2, 0.5, 0.8}) {
      const double x = sigma + frac * (lambda - sigma);
      auto f = [&](double u) { return dist.density(u); };
      auto pts = testsupport::support_breakpoints(dist);
      std::vector<double> cut;
      for (double p : pts)
        if (p < x) cut.push_back(p);
      cut.push_back(x);
      const double partial = testsupport::integrate_piecewise(f, cut);
      CHECK(dist.cdf(x) == doctest::Approx(partial).epsilon(1e-8));
      CHECK(dist.density(x) >= 0.0);
    }
  }
}

TEST_CASE("depolarized spectrum law is the shifted and scaled clean law") {
  auto spec = Spectrum::from_rationals(
      {{Rational(0), 2}, {Rational(1, 2), 1}, {Rational(1), 1}});
  const int s = 2;
  auto clean = build_distribution(spec, s);

  for (double gamma : {0.1, 0.5, 0.9}) {
    auto noisy_spec = depolarize_spectrum(spec, gamma);
    auto noisy = build_distribution(noisy_spec, s);
    const double shift = gamma * spec.trace() / spec.dimension();
    const double scale = 1.0 - gamma;
    const double lo = noisy.min_value();
    const double hi = noisy.max_value();
    for (double frac : {0.1, 0.35, 0.6, 0.93}) {
      const double y = lo + frac * (hi - lo);
      CHECK(noisy.density(y) ==
            doctest::Approx(shifted_scaled_density(clean, y, shift, scale)).epsilon(1e-9));
    }
  }
}

TEST_CASE("density evaluation outside the support is rejected") {
  auto dist = build_distribution(projector_spectrum(1, 4), 1);
  CHECK_THROWS_AS(dist.density(-0.2), DomainError);
  CHECK_THROWS_AS(dist.density(1.2), DomainError);
  CHECK(dist.cdf(-0.2) == 0.0);
  CHECK(dist.cdf(1.2) == 1.0);
}

TEST_CASE("shifted and scaled evaluation validates its arguments") {
  auto dist = build_distribution(projector_spectrum(1, 2), 1);
  CHECK(shifted_scaled_density(dist, 0.5, 0.25, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(shifted_scaled_density(dist, 0.1, 0.25, 0.5), DomainError);
  CHECK_THROWS_AS(shifted_scaled_density(dist, 0.5, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(shifted_scaled_density(dist, 0.5, 0.0, -1.0), DomainError);
}

TEST_CASE("non-integral environment dimension only fits the two-point cases") {
  auto two = build_distribution(projector_spectrum(1, 4), EnvDim(1.5));
  CHECK(two.kind() == DistributionKind::beta);
  CHECK(two.beta_alpha() == doctest::Approx(1.5));

  auto three = Spectrum::from_rationals(
      {{Rational(0), 1}, {Rational(1, 2), 1}, {Rational(1), 1}});
  CHECK_THROWS_AS(build_distribution(three, EnvDim(1.5)), DomainError);
}

TEST_CASE("precision cap failures are reported, generous caps succeed") {
  // near-degenerate pair forces huge partial-fraction coefficients
  auto hard = Spectrum::from_rationals({{Rational(0), 2},
                                        {Rational(1, 10000000), 2},
                                        {Rational(1), 2}});
  BuildOptions tight;
  tight.precision_bits = 64;
  tight.max_precision_bits = 128;
  CHECK_THROWS_AS(build_distribution(hard, 8, tight), PrecisionExhausted);

  auto dist = build_distribution(hard, 8);
  CHECK(dist.precision_bits() > 128);
  CHECK(dist.cdf(dist.max_value()) == doctest::Approx(1.0).epsilon(1e-6));
}
