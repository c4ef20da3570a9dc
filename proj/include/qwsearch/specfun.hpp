// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_SPECFUN_HPP
#define QWSEARCH_SPECFUN_HPP

#include <complex>
#include <cstdint>

namespace qwsearch::specfun {

/// Truncation control shared by the series evaluations in this module.
struct SeriesControl {
  int max_terms = 512;
  double abs_tol = 1e-16;
  double rel_tol = 1e-15;

  void validate() const;  // throws std::invalid_argument
};

/// Riemann zeta(s) for real s != 1.  Arguments s < 0 go through the
/// functional equation zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s);
/// everything else is summed directly with Euler-Maclaurin acceleration.
double riemann_zeta(double s);

/// Hurwitz zeta(eta, x) for eta != 1, x > 0, by Euler-Maclaurin summation
/// with Bernoulli corrections up to B_12 (DLMF 25.11.5).  Valid for negative
/// eta as well, where the formula provides the analytic continuation.
double hurwitz_zeta(double eta, double x);

/// Two-term large-x expansion x^(-eta)/2 + x^(1-eta)/(eta-1).
/// Truncation error is O(x^(-1-eta)).
double hurwitz_zeta_asymptotic(double eta, double x);

/// Gamma(s) for real s not a non-positive integer; negative arguments use
/// the reflection formula.
double gamma_fn(double s);

/// Generalized hypergeometric 1F2(a; b1, b2; z) by its power series.
/// Entire in z; b1, b2 must not be non-positive integers.
double hyp1f2(double a, double b1, double b2, double z,
              const SeriesControl& control = {});

/// Generalized exponential integral E_nu(z) = z^(nu-1) Gamma(1-nu, z) for
/// real order nu and complex z != 0.  Ascending series for small |z|,
/// continued fraction for large |z|.
std::complex<double> expint_nu(double nu, std::complex<double> z,
                               const SeriesControl& control = {});

/// E_nu(i pi z) + E_nu(-i pi z) = 2 Re E_nu(i pi z); real for real nu, z > 0.
double cal_k(double nu, double z, const SeriesControl& control = {});

/// Sum_{i=1}^{m} i^(-r), summed exactly (compensated).
double generalized_harmonic(std::int64_t m, double r);

/// The factor 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) from the zeta functional
/// equation.  Near even s >= 2 the 0 * inf product is replaced by the
/// equivalent ratio zeta(s)/zeta(1-s), which is regular there.
double functional_equation_factor(double s);

}  // namespace qwsearch::specfun

#endif  // QWSEARCH_SPECFUN_HPP
