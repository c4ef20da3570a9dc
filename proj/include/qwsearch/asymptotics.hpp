// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_ASYMPTOTICS_HPP
#define QWSEARCH_ASYMPTOTICS_HPP

#include <optional>
#include <string>

namespace qwsearch::asymptotics {

enum class RegimeKind {
  kMimicsComplete,  // alpha < d: gap saturates, graph acts globally connected
  kIntermediate,    // d < alpha < d+2: gap scales as N^(1-alpha/d)
  kShortRange,      // alpha >= d+2: gap scales as N^(-2/d)
};

std::string to_string(RegimeKind kind);

struct Regime {
  RegimeKind kind = RegimeKind::kShortRange;
  bool optimal = false;  // alpha < 3d/2 (and d <= 4)
};

/// Regime and search-optimality flag; alpha = d and alpha = d + 2 are
/// excluded boundary points.
Regime classify(int dim, double alpha);

/// C1 constant of the saturated gap Delta = 1 - C1, for 0 <= alpha < d.
/// Integer alpha values interior to the range are evaluated as the average of
/// the two +-1e-6 limits.
double const_c1(int dim, double alpha);

/// C2 constant of Delta = C2 N^(1-alpha/d), for d < alpha < d+2.
double const_c2(int dim, double alpha);

struct AsymptoticGap {
  Regime regime;
  double exponent = 0.0;             // 0, 1 - alpha/d, or -2/d
  std::optional<double> constant;    // C1 or C2; absent for short range
  std::optional<double> predicted;   // Delta prediction when constant present
};

/// Closed-form rescaled-gap prediction.  n_sites may be non-integral so the
/// curves can be plotted continuously.
AsymptoticGap gap_asymptotic(int dim, double alpha, double n_sites);

struct UnscaledAsymptotics {
  double delta = 0.0;    // leading-order eps(k_1)
  double e_kmax = 0.0;   // leading-order eps(k_max)
  double kappa0 = 0.0;   // leading-order coupling sum
  bool limit_evaluated = false;  // alpha hit an excluded integer; +-1e-6 limit
};

/// Leading-order values of the unscaled gap, the bandwidth and kappa0 for
/// alpha < d+2, in the same positive-semidefinite convention as the exact
/// dispersion.  The d = 1 gap carries the even-zeta correction series
/// truncated at j = 3 (remainder O(N^-8)).
UnscaledAsymptotics unscaled_asymptotics(int dim, double alpha,
                                         double n_sites);

/// d_s = 2d / (alpha - d), defined for d < alpha < d+2.
double spectral_dimension(int dim, double alpha);

/// Asymptotic order parameter: 1 for alpha <= d,
/// sqrt(3 - 2 alpha/d) / (2 - alpha/d) for d < alpha < 3d/2, else 0.
double chi_asymptotic(int dim, double alpha);

/// Leading-order dispersion model at small k: prefactor * k^(alpha-d) in the
/// intermediate regime, prefactor * k^2 in the short-range one, magnitudes
/// matching the positive-semidefinite convention.
double continuum_dispersion(int dim, double alpha, double k);

/// Continuum S_ell up to the shared prefactor: 1 / (d + ell (d - alpha)).
/// Throws when the defining integral diverges (d + ell (d - alpha) <= 0).
double s_ell_continuum(int dim, double alpha, int ell);

}  // namespace qwsearch::asymptotics

#endif  // QWSEARCH_ASYMPTOTICS_HPP
