// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qwsearch/errors.hpp"

namespace sf = qwsearch::specfun;
using qwsearch::convergence_error;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct-summation oracle with a rigorous midpoint-integral tail; the tail
// error is bounded by s(s+1)/24 * K^(-s-1).
double zeta_direct(double s, long terms) {
  long double sum = 0.0L;
  for (long n = terms; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  sum += std::pow(terms + 0.5, 1.0 - s) / (s - 1.0);
  return static_cast<double>(sum);
}

double hurwitz_direct(double eta, double x, long terms) {
  long double sum = 0.0L;
  for (long n = terms; n >= 0; --n) sum += std::pow(x + n, -eta);
  sum += std::pow(x + terms + 0.5, 1.0 - eta) / (eta - 1.0);
  return static_cast<double>(sum);
}

// 0F1(; b; z) by its own series, for the parameter-cancellation check.
double hyp0f1(double b, double z) {
  double sum = 1.0, term = 1.0;
  for (int n = 0; n < 200; ++n) {
    term *= z / ((b + n) * (n + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("riemann_zeta known values") {
  CHECK(sf::riemann_zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(sf::riemann_zeta(0.0) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(sf::riemann_zeta(0.5) ==
        doctest::Approx(-1.4603545088095868).epsilon(1e-12));
  CHECK(sf::riemann_zeta(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
  CHECK(sf::riemann_zeta(-3.0) == doctest::Approx(1.0 / 120.0).epsilon(1e-12));
  // trivial zeros
  CHECK(std::abs(sf::riemann_zeta(-2.0)) < 1e-15);
  CHECK(std::abs(sf::riemann_zeta(-4.0)) < 1e-15);
}

TEST_CASE("riemann_zeta against the direct-summation oracle") {
  // frozen from the oracle at 2e6 terms: 1.341487257250917180
  CHECK(sf::riemann_zeta(2.5) ==
        doctest::Approx(1.3414872572509172).epsilon(1e-13));
  CHECK(sf::riemann_zeta(2.5) ==
        doctest::Approx(zeta_direct(2.5, 100000)).epsilon(1e-12));
  for (double s : {1.5, 3.0, 4.5, 7.0, 10.0})
    CHECK(sf::riemann_zeta(s) ==
          doctest::Approx(zeta_direct(s, 100000)).epsilon(1e-12));
}

TEST_CASE("riemann_zeta pole") {
  CHECK_THROWS_AS(sf::riemann_zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(sf::riemann_zeta(1.0 + 1e-13), std::domain_error);
}

TEST_CASE("functional-equation identity for negative s") {
  for (double s : {-0.5, -1.5, -2.5}) {
    const double reflected = std::pow(2.0, s) * std::pow(kPi, s - 1.0) *
                             std::sin(0.5 * kPi * s) * std::tgamma(1.0 - s) *
                             sf::riemann_zeta(1.0 - s);
    CHECK(sf::riemann_zeta(s) == doctest::Approx(reflected).epsilon(1e-10));
  }
}

TEST_CASE("functional_equation_factor is the zeta ratio and stays finite") {
  for (double a = 1.1; a < 3.0; a += 0.2) {
    if (std::abs(a - 2.0) < 0.05) continue;
    CHECK(sf::functional_equation_factor(a) ==
          doctest::Approx(sf::riemann_zeta(a) / sf::riemann_zeta(1.0 - a))
              .epsilon(1e-9));
  }
  const double at_two = sf::functional_equation_factor(2.0);
  CHECK(std::isfinite(at_two));
  CHECK(at_two == doctest::Approx(-2.0 * kPi * kPi).epsilon(1e-9));
  CHECK(sf::functional_equation_factor(2.0 - 1e-6) ==
        doctest::Approx(at_two).epsilon(1e-4));
  CHECK(sf::functional_equation_factor(2.0 + 1e-6) ==
        doctest::Approx(at_two).epsilon(1e-4));
}

TEST_CASE("hurwitz_zeta known values") {
  CHECK(sf::hurwitz_zeta(2.0, 1.0) ==
        doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(sf::hurwitz_zeta(3.0, 0.5) ==
        doctest::Approx(7.0 * sf::riemann_zeta(3.0)).epsilon(1e-12));
  // frozen from the direct-summation oracle at 1e7 terms
  CHECK(sf::hurwitz_zeta(2.0, 100.0) ==
        doctest::Approx(0.010050166663333571).epsilon(1e-10));
  CHECK(sf::hurwitz_zeta(2.0, 100.0) ==
        doctest::Approx(hurwitz_direct(2.0, 100.0, 200000)).epsilon(1e-12));
  // negative order: zeta(-3, 2) = -B_4(2)/4
  const double b4_at_2 = 16.0 - 2.0 * 8.0 + 4.0 - 1.0 / 30.0;
  CHECK(sf::hurwitz_zeta(-3.0, 2.0) ==
        doctest::Approx(-b4_at_2 / 4.0).epsilon(1e-12));
}

TEST_CASE("hurwitz_zeta defining recurrence") {
  for (double eta : {-3.5, -2.0, -0.5, 0.5, 2.0, 3.0, 6.5, 10.0}) {
    for (double x : {0.3, 1.0, 2.5, 7.0, 50.0, 1000.0, 1e6}) {
      const double at_x = sf::hurwitz_zeta(eta, x);
      const double lhs = at_x - sf::hurwitz_zeta(eta, x + 1.0);
      const double rhs = std::pow(x, -eta);
      // tolerance scales with the operand size: the difference cancels
      // for eta < 0 at large x
      const double scale = std::max(std::abs(at_x), std::abs(rhs));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hurwitz_zeta domain errors") {
  CHECK_THROWS_AS(sf::hurwitz_zeta(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(sf::hurwitz_zeta(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sf::hurwitz_zeta(2.0, -1.0), std::domain_error);
}

TEST_CASE("hurwitz_zeta_asymptotic") {
  CHECK(sf::hurwitz_zeta_asymptotic(2.0, 100.0) ==
        doctest::Approx(0.0100500).epsilon(1e-5));
  CHECK(std::abs(sf::hurwitz_zeta_asymptotic(2.0, 100.0) -
                 sf::hurwitz_zeta(2.0, 100.0)) < 5e-7);
  // ratio tends to one
  CHECK(sf::hurwitz_zeta_asymptotic(2.0, 1e5) /
            sf::hurwitz_zeta(2.0, 1e5) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // eta < 1 makes the second term dominate with a negative sign
  CHECK(sf::hurwitz_zeta_asymptotic(0.5, 100.0) < 0.0);
  CHECK_THROWS_AS(sf::hurwitz_zeta_asymptotic(2.0, 1.0), std::domain_error);
}

TEST_CASE("gamma_fn") {
  CHECK(sf::gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(sf::gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  // reflection-formula oracle
  const double reflected = kPi / (std::sin(kPi * -1.5) * std::tgamma(2.5));
  CHECK(sf::gamma_fn(-1.5) == doctest::Approx(reflected).epsilon(1e-12));
  CHECK(sf::gamma_fn(-1.5) ==
        doctest::Approx(4.0 * std::sqrt(kPi) / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(sf::gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("hyp1f2 basics") {
  CHECK(sf::hyp1f2(0.7, 1.3, 2.1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // a = b1 cancels: 1F2(b1; b1, b2; z) = 0F1(; b2; z)
  for (double z : {-2.4674011002723395, -0.8, 1.7}) {
    CHECK(sf::hyp1f2(0.9, 0.9, 1.4, z) ==
          doctest::Approx(hyp0f1(1.4, z)).epsilon(1e-13));
  }
  // frozen 50-term extended-precision series
  CHECK(sf::hyp1f2(-0.5, 0.5, 0.5, -kPi * kPi / 4.0) ==
        doctest::Approx(4.8180318374188548).epsilon(1e-13));
}

TEST_CASE("hyp1f2 is independent of the truncation settings") {
  const double base = sf::hyp1f2(-0.7, 0.6, 1.9, -kPi * kPi / 4.0);
  for (int max_terms : {64, 200, 4000}) {
    sf::SeriesControl control;
    control.max_terms = max_terms;
    control.abs_tol = 1e-17;
    CHECK(sf::hyp1f2(-0.7, 0.6, 1.9, -kPi * kPi / 4.0, control) ==
          doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("hyp1f2 errors") {
  CHECK_THROWS_AS(sf::hyp1f2(0.5, -1.0, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(sf::hyp1f2(0.5, 0.5, 0.0, 1.0), std::domain_error);
  sf::SeriesControl tight;
  tight.max_terms = 3;
  tight.abs_tol = 1e-30;
  tight.rel_tol = 0.0;
  CHECK_THROWS_AS(sf::hyp1f2(0.5, 0.7, 0.9, 40.0, tight), convergence_error);
  sf::SeriesControl bad;
  bad.abs_tol = 0.0;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(sf::hyp1f2(0.5, 0.7, 0.9, 1.0, bad), std::invalid_argument);
}

TEST_CASE("expint_nu known values and identities") {
  // E_1(1), frozen from composite-Simpson quadrature of int_1^inf e^-t/t dt
  const auto e1 = sf::expint_nu(1.0, {1.0, 0.0});
  CHECK(e1.real() == doctest::Approx(0.21938393439552017).epsilon(1e-8));
  CHECK(std::abs(e1.imag()) < 1e-15);

  // E_0(z) = exp(-z)/z on both evaluation branches
  for (std::complex<double> z :
       {std::complex<double>{0.4, 1.1}, std::complex<double>{4.0, 2.0},
        std::complex<double>{0.0, 2.0}}) {
    const auto direct = std::exp(-z) / z;
    const auto computed = sf::expint_nu(0.0, z);
    CHECK(std::abs(computed - direct) < 1e-12 * std::abs(direct));
  }

  // Schwarz reflection for real order
  for (std::complex<double> z :
       {std::complex<double>{0.5, 0.2}, std::complex<double>{2.0, 3.0}}) {
    const auto upper = sf::expint_nu(1.7, z);
    const auto lower = sf::expint_nu(1.7, std::conj(z));
    CHECK(std::abs(lower - std::conj(upper)) < 1e-12 * std::abs(upper));
  }

  // continuity across the series/continued-fraction switch at |z| = 3
  for (double nu : {-1.3, 0.6, 1.5, 2.8}) {
    const auto below = sf::expint_nu(nu, {2.999, 0.1});
    const auto above = sf::expint_nu(nu, {3.001, 0.1});
    CHECK(std::abs(below - above) < 1e-2 * std::abs(below));
    const auto b2 = sf::expint_nu(nu, {0.0, 2.999});
    const auto a2 = sf::expint_nu(nu, {0.0, 3.001});
    CHECK(std::abs(b2 - a2) < 1e-2 * std::abs(b2));
  }

  CHECK_THROWS_AS(sf::expint_nu(1.0, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("cal_k realness and quadrature value") {
  for (double nu : {-1.3, 0.0, 0.7, 1.5, 2.8}) {
    for (double z : {0.3, 1.0, 2.0, 4.0}) {
      const auto pair = sf::expint_nu(nu, {0.0, kPi * z}) +
                        sf::expint_nu(nu, {0.0, -kPi * z});
      CHECK(std::abs(pair.imag()) <=
            1e-14 * std::max(1.0, std::abs(pair.real())));
      CHECK(sf::cal_k(nu, z) ==
            doctest::Approx(pair.real()).epsilon(1e-13));
    }
  }
  // E_0 gives a purely imaginary value, so the pair sums to zero
  CHECK(std::abs(sf::cal_k(0.0, 1.0)) < 1e-14);
  // frozen from the integration-by-parts quadrature oracle; the three points
  // cover the continued fraction, the ascending series and a negative order
  CHECK(sf::cal_k(1.5, 2.0) ==
        doctest::Approx(0.06460676384042471).epsilon(1e-9));
  CHECK(sf::cal_k(1.5, 0.5) ==
        doctest::Approx(-0.7758584358034142).epsilon(1e-9));
  CHECK(sf::cal_k(-0.5, 2.0) ==
        doctest::Approx(-0.0249211687991086).epsilon(1e-9));
  CHECK_THROWS_AS(sf::cal_k(1.0, 0.0), std::domain_error);
}

TEST_CASE("generalized_harmonic") {
  CHECK(sf::generalized_harmonic(2, 2.0) == doctest::Approx(1.25).epsilon(1e-15));
  for (std::int64_t m : {1, 7, 1000})
    CHECK(sf::generalized_harmonic(m, 0.0) ==
          doctest::Approx(static_cast<double>(m)).epsilon(1e-15));
  CHECK(sf::generalized_harmonic(50, 2.0) ==
        doctest::Approx(sf::riemann_zeta(2.0) - sf::hurwitz_zeta(2.0, 51.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(sf::generalized_harmonic(0, 1.0), std::domain_error);
}
