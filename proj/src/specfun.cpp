// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qwsearch/errors.hpp"

namespace qwsearch::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;

// B_2, B_4, ..., B_12 and the matching (2j)! values.
constexpr double kBernoulli[6] = {1.0 / 6.0,  -1.0 / 30.0,       1.0 / 42.0,
                                  -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
constexpr double kEvenFactorial[6] = {2.0,     24.0,      720.0,
                                      40320.0, 3628800.0, 479001600.0};

bool is_near_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) < tol;
}

bool is_nonpositive_integer(double x) {
  return x < 0.5 && is_near_integer(x) && std::round(x) <= 0.0;
}

// Ascending series for E_nu(z), nu not a positive integer:
//   E_nu(z) = Gamma(1-nu) z^(nu-1) - sum_{n>=0} (-z)^n / (n! (1-nu+n))
std::complex<double> expint_series_general(double nu, std::complex<double> z,
                                           const SeriesControl& control) {
  std::complex<double> sum = 0.0;
  std::complex<double> term = 1.0;  // (-z)^n / n!
  const double z_mag = std::abs(z);
  for (int n = 0; n < control.max_terms; ++n) {
    if (n > 0) term *= -z / static_cast<double>(n);
    const std::complex<double> piece = term / (1.0 - nu + n);
    sum += piece;
    const double bound =
        std::max(control.abs_tol, control.rel_tol * std::abs(sum));
    if (n > z_mag + 4 && std::abs(piece) <= bound) {
      return gamma_fn(1.0 - nu) * std::pow(z, nu - 1.0) - sum;
    }
  }
  throw convergence_error("expint_nu: ascending series did not converge");
}

// DLMF 8.19.8: series for positive integer order m, with the n = m-1 term
// replaced by the logarithmic one.
std::complex<double> expint_series_posint(int m, std::complex<double> z,
                                          const SeriesControl& control) {
  double psi = -kEulerGamma;
  for (int k = 1; k < m; ++k) psi += 1.0 / k;
  std::complex<double> prefactor = 1.0;  // (-z)^(m-1) / (m-1)!
  for (int k = 1; k < m; ++k) prefactor *= -z / static_cast<double>(k);

  std::complex<double> sum = 0.0;
  std::complex<double> term = 1.0;
  const double z_mag = std::abs(z);
  for (int n = 0; n < control.max_terms; ++n) {
    if (n > 0) term *= -z / static_cast<double>(n);
    if (n == m - 1) continue;
    const std::complex<double> piece = term / static_cast<double>(1 - m + n);
    sum += piece;
    const double bound =
        std::max(control.abs_tol, control.rel_tol * std::abs(sum));
    if (n > z_mag + 4 && n > m && std::abs(piece) <= bound) {
      return prefactor * (psi - std::log(z)) - sum;
    }
  }
  throw convergence_error("expint_nu: integer-order series did not converge");
}

// Continued fraction (A&S 5.1.22, even form) by the modified Lentz method:
//   E_nu(z) = e^-z [ 1/(z+nu-) 1*nu/(z+nu+2-) 2(nu+1)/(z+nu+4-) ... ]
std::complex<double> expint_continued_fraction(double nu,
                                               std::complex<double> z) {
  constexpr double kTiny = 1e-290;
  std::complex<double> f = kTiny;
  std::complex<double> c = f;
  std::complex<double> d = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    const std::complex<double> a =
        (k == 1) ? std::complex<double>(1.0)
                 : std::complex<double>(-(k - 1.0) * (nu + k - 2.0));
    const std::complex<double> b = z + nu + 2.0 * (k - 1);
    d = b + a * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const std::complex<double> delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-15) return std::exp(-z) * f;
  }
  throw convergence_error("expint_nu: continued fraction did not converge");
}

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1)
    throw std::invalid_argument("SeriesControl: max_terms must be >= 1");
  if (abs_tol < 0.0 || rel_tol < 0.0)
    throw std::invalid_argument("SeriesControl: tolerances must be >= 0");
  if (abs_tol == 0.0 && rel_tol == 0.0)
    throw std::invalid_argument("SeriesControl: at least one tolerance > 0");
}

double hurwitz_zeta(double eta, double x) {
  if (x <= 0.0)
    throw std::domain_error("hurwitz_zeta: requires x > 0, got x = " +
                            std::to_string(x));
  if (std::abs(eta - 1.0) < 1e-12)
    throw std::domain_error("hurwitz_zeta: pole at eta = 1");

  // Sum directly until the tail argument is large enough that the Bernoulli
  // corrections through B_12 bottom out.  Extended precision throughout: for
  // eta < 0 the continuation terms cancel against the direct sum by many
  // orders of magnitude.
  constexpr double kTailStart = 18.0;
  long direct_terms = 0;
  if (x < kTailStart)
    direct_terms = static_cast<long>(std::ceil(kTailStart - x));

  const long double eta_l = eta;
  long double sum = 0.0L;
  for (long k = 0; k < direct_terms; ++k)
    sum += std::pow(static_cast<long double>(x) + k, -eta_l);

  const long double b = static_cast<long double>(x) + direct_terms;
  long double result = sum + std::pow(b, 1.0L - eta_l) / (eta_l - 1.0L) +
                       0.5L * std::pow(b, -eta_l);

  // Euler-Maclaurin corrections: B_2j/(2j)! (eta)_(2j-1) b^(-eta-2j+1).
  long double pochhammer = eta_l;
  long double b_power = std::pow(b, -eta_l - 1.0L);
  const long double b_inv2 = 1.0L / (b * b);
  for (int j = 0; j < 6; ++j) {
    if (j > 0) {
      pochhammer *= (eta_l + 2 * j - 1) * (eta_l + 2 * j);
      b_power *= b_inv2;
    }
    result += static_cast<long double>(kBernoulli[j]) / kEvenFactorial[j] *
              pochhammer * b_power;
    if (pochhammer == 0.0L) break;  // negative integer eta: exact termination
  }
  return static_cast<double>(result);
}

double hurwitz_zeta_asymptotic(double eta, double x) {
  if (std::abs(eta - 1.0) < 1e-12)
    throw std::domain_error("hurwitz_zeta_asymptotic: pole at eta = 1");
  if (x < 10.0)
    throw std::domain_error("hurwitz_zeta_asymptotic: requires x >= 10");
  return 0.5 * std::pow(x, -eta) + std::pow(x, 1.0 - eta) / (eta - 1.0);
}

double riemann_zeta(double s) {
  if (std::abs(s - 1.0) < 1e-12)
    throw std::domain_error("riemann_zeta: pole at s = 1");
  if (s < 0.0) return functional_equation_factor(s) * riemann_zeta(1.0 - s);
  return hurwitz_zeta(s, 1.0);
}

double functional_equation_factor(double s) {
  const double nearest_even = 2.0 * std::round(0.5 * s);
  if (nearest_even >= 2.0 && std::abs(s - nearest_even) < 0.05) {
    // sin(pi s/2) Gamma(1-s) is 0 * inf here; the ratio form is regular.
    return riemann_zeta(s) / riemann_zeta(1.0 - s);
  }
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
         gamma_fn(1.0 - s);
}

double gamma_fn(double s) {
  if (is_nonpositive_integer(s))
    throw std::domain_error("gamma_fn: pole at non-positive integer s = " +
                            std::to_string(s));
  if (s > 0.0) return std::tgamma(s);
  return kPi / (std::sin(kPi * s) * std::tgamma(1.0 - s));
}

double hyp1f2(double a, double b1, double b2, double z,
              const SeriesControl& control) {
  control.validate();
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
    throw std::domain_error("hyp1f2: lower parameter is a non-positive integer");

  double sum = 1.0;
  double term = 1.0;
  int quiet = 0;
  for (int n = 0; n < control.max_terms; ++n) {
    term *= (a + n) / ((b1 + n) * (b2 + n)) * z / (n + 1.0);
    sum += term;
    const double bound =
        std::max(control.abs_tol, control.rel_tol * std::abs(sum));
    quiet = (std::abs(term) <= bound) ? quiet + 1 : 0;
    if (quiet >= 2) return sum;
  }
  throw convergence_error("hyp1f2: series did not converge within max_terms");
}

std::complex<double> expint_nu(double nu, std::complex<double> z,
                               const SeriesControl& control) {
  control.validate();
  if (z == std::complex<double>(0.0, 0.0))
    throw std::domain_error("expint_nu: z = 0 is outside the domain");
  if (std::abs(z) >= 3.0) return expint_continued_fraction(nu, z);
  if (nu > 0.5 && is_near_integer(nu, 1e-10))
    return expint_series_posint(static_cast<int>(std::round(nu)), z, control);
  return expint_series_general(nu, z, control);
}

double cal_k(double nu, double z, const SeriesControl& control) {
  if (z <= 0.0) throw std::domain_error("cal_k: requires z > 0");
  return 2.0 * expint_nu(nu, {0.0, kPi * z}, control).real();
}

double generalized_harmonic(std::int64_t m, double r) {
  if (m < 1) throw std::domain_error("generalized_harmonic: requires m >= 1");
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t i = 1; i <= m; ++i) {
    const double term = std::pow(static_cast<double>(i), -r) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace qwsearch::specfun
