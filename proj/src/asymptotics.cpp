// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qwsearch/specfun.hpp"

namespace qwsearch::asymptotics {

namespace {

constexpr double kPi = std::numbers::pi;

double zeta(double s) { return specfun::riemann_zeta(s); }
double kk(double nu, double z) { return specfun::cal_k(nu, z); }
double f12(double a, double b1, double b2) {
  return specfun::hyp1f2(a, b1, b2, -0.25 * kPi * kPi);
}

// sin(pi a/2) Gamma(1-a), regular across even a via the zeta-ratio route.
double sin_gamma(double a) {
  return specfun::functional_equation_factor(a) /
         (std::pow(2.0, a) * std::pow(kPi, a - 1.0));
}

double helper_h(double a) { return (std::pow(2.0, 2.0 - a) - 4.0) * zeta(a); }
double helper_f(double a) {
  return (std::pow(2.0, 4.0 - a) - 8.0) * zeta(a - 1.0);
}
double helper_g(double a) {
  return (std::pow(2.0, 5.0 - a) - 8.0) * zeta(a - 2.0) +
         (std::pow(2.0, 2.0 - a) - 4.0) * zeta(a);
}
double helper_j(double a) {
  return -std::pow(2.0, 4.0 - a) / 3.0 *
         ((std::pow(2.0, a) - 8.0) * zeta(a - 3.0) +
          2.0 * (std::pow(2.0, a) - 2.0) * zeta(a - 1.0));
}

void validate_dim(int dim) {
  if (dim < 1 || dim > 4)
    throw std::invalid_argument("asymptotics: dim must be in {1,2,3,4}");
}

bool near(double x, double y, double tol = 1e-9) {
  return std::abs(x - y) < tol;
}

double c1_raw(int dim, double a) {
  switch (dim) {
    case 1:
      return (1.0 - a) * std::pow(kPi, a - 1.0) * sin_gamma(a);
    case 2:
      return f12(0.5 * (2.0 - a), 0.5, 0.5 * (4.0 - a)) /
                 (2.0 - std::pow(2.0, 2.0 - a)) -
             (a - 2.0) * kk(a - 1.0, 2.0) / (2.0 - std::pow(2.0, a)) +
             (a - 2.0) * kk(a - 1.0, 1.0) / (std::pow(2.0, 3.0 - a) - 4.0);
    case 3:
      return f12(0.5 * (3.0 - a), 0.5, 0.5 * (5.0 - a)) /
                 (3.0 * (std::pow(3.0, 2.0 - a) - std::pow(2.0, 3.0 - a) + 1.0)) -
             (a - 3.0) *
                 (std::pow(2.0, a + 1.0) * kk(a - 2.0, 1.0) -
                  8.0 * kk(a - 2.0, 2.0) -
                  std::pow(2.0, a) * std::pow(3.0, 3.0 - a) * kk(a - 2.0, 3.0)) /
                 (6.0 * (std::pow(3.0, 2.0 - a) * std::pow(2.0, a) +
                         std::pow(2.0, a) - 8.0));
    case 4: {
      const double den1 =
          (-3.0 * std::pow(2.0, a + 3.0) + std::pow(4.0, a) - 64.0) *
              std::pow(4.0, -a) +
          std::pow(3.0, 4.0 - a);
      const double den2 =
          8.0 * (-3.0 * std::pow(2.0, a + 3.0) + std::pow(4.0, a) - 64.0 +
                 std::pow(3.0, 4.0 - a) * std::pow(4.0, a));
      return 0.25 * f12(0.5 * (4.0 - a), 0.5, 0.5 * (6.0 - a)) / den1 -
             3.0 * std::pow(4.0, a) * (a - 4.0) *
                 (kk(a - 3.0, 1.0) -
                  54.0 * std::pow(3.0, -a) * kk(a - 3.0, 3.0)) /
                 den2 +
             256.0 * (a - 4.0) * kk(a - 3.0, 4.0) / den2;
    }
    default:
      throw std::invalid_argument("asymptotics: bad dim");
  }
}

double c2_raw(int dim, double a) {
  switch (dim) {
    case 1:
      return ((a - 1.0) * specfun::functional_equation_factor(a) +
              std::pow(2.0, a)) /
             (helper_h(a) * (a - 1.0));
    case 2:
      return ((std::pow(2.0, a + 1.0) - 4.0) / ((a - 2.0) * (a - 1.0)) -
              (2.0 * kk(a - 1.0, 2.0) -
               std::pow(2.0, a - 1.0) * kk(a - 1.0, 1.0)) /
                  (a - 1.0) -
              std::pow(2.0, a) * f12(0.5 * (2.0 - a), 0.5, 0.5 * (4.0 - a)) /
                  ((a - 2.0) * (a - 1.0))) /
             helper_f(a);
    case 3:
      return (-std::pow(2.0, a) * f12(0.5 * (3.0 - a), 0.5, 0.5 * (5.0 - a)) /
                  ((a - 3.0) * (a - 2.0) * (a - 1.0)) +
              (std::pow(2.0, a) * kk(a - 2.0, 1.0) - 4.0 * kk(a - 2.0, 2.0) -
               std::pow(2.0, a - 1.0) * std::pow(3.0, 3.0 - a) *
                   kk(a - 2.0, 3.0)) /
                  ((a - 2.0) * (a - 1.0)) +
              std::pow(3.0, 1.0 - a) *
                  (9.0 * std::pow(2.0, a) - 8.0 * std::pow(3.0, a) +
                   std::pow(6.0, a)) /
                  ((a - 3.0) * (a - 2.0) * (a - 1.0))) /
             helper_g(a);
    case 4:
      return (-std::pow(2.0, a) * f12(0.5 * (4.0 - a), 0.5, 0.5 * (6.0 - a)) /
                  ((a - 4.0) * (a - 3.0) * (a - 2.0) * (a - 1.0)) +
              3.0 * std::pow(2.0, a - 1.0) * kk(a - 3.0, 1.0) /
                  ((a - 3.0) * (a - 2.0) * (a - 1.0)) -
              std::pow(6.0, -a) *
                  (81.0 * std::pow(4.0, a) * kk(a - 3.0, 3.0) +
                   128.0 * std::pow(3.0, a) * kk(a - 3.0, 4.0)) /
                  ((a - 3.0) * (a - 2.0) * (a - 1.0)) +
              4.0 *
                  (-std::pow(2.0, 6.0 - a) + std::pow(2.0, a) +
                   std::pow(2.0, a) * std::pow(3.0, 4.0 - a) - 24.0) /
                  ((a - 4.0) * (a - 3.0) * (a - 2.0) * (a - 1.0))) /
             helper_j(a);
    default:
      throw std::invalid_argument("asymptotics: bad dim");
  }
}

struct RawUnscaled {
  double kappa0;
  double e_k1;     // raw cosine sum at k_1 (epsilon_0 = 0 convention)
  double e_kmax;   // raw cosine sum at k_max
};

RawUnscaled unscaled_raw(int dim, double a, double nn) {
  RawUnscaled r{};
  switch (dim) {
    case 1: {
      r.kappa0 = 2.0 * zeta(a) - std::pow(2.0, a) / (a - 1.0) * std::pow(nn, 1.0 - a);
      // even-zeta correction series, truncated at j = 3 (remainder O(N^-8))
      double corr = 0.0;
      const double factorials[3] = {2.0, 24.0, 720.0};
      for (int j = 1; j <= 3; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        corr += 2.0 * zeta(a - 2.0 * j) * sign *
                std::pow(2.0 * kPi, 2.0 * j) / factorials[j - 1] *
                std::pow(nn, -2.0 * j);
      }
      r.e_k1 = 2.0 * zeta(a) +
               std::pow(2.0, a) * std::pow(kPi, a - 1.0) * sin_gamma(a) *
                   std::pow(nn, 1.0 - a) +
               corr;
      r.e_kmax = (std::pow(2.0, 2.0 - a) - 2.0) * zeta(a);
      break;
    }
    case 2: {
      r.kappa0 = 4.0 * zeta(a - 1.0) +
                 (4.0 - std::pow(2.0, a + 1.0)) / ((a - 2.0) * (a - 1.0)) *
                     std::pow(nn, 1.0 - 0.5 * a);
      r.e_k1 = 4.0 * zeta(a - 1.0) -
               (std::pow(2.0, a) * f12(0.5 * (2.0 - a), 0.5, 0.5 * (4.0 - a)) /
                    ((a - 2.0) * (a - 1.0)) +
                (2.0 * kk(a - 1.0, 2.0) -
                 std::pow(2.0, a - 1.0) * kk(a - 1.0, 1.0)) /
                    (a - 1.0)) *
                   std::pow(nn, 1.0 - 0.5 * a);
      r.e_kmax = (std::pow(2.0, 4.0 - a) - 4.0) * zeta(a - 1.0);
      break;
    }
    case 3: {
      const double coeff = std::pow(3.0, 1.0 - a) *
                           (9.0 * std::pow(2.0, a) - 8.0 * std::pow(3.0, a) +
                            std::pow(6.0, a)) /
                           ((a - 3.0) * (a - 2.0) * (a - 1.0));
      r.kappa0 = 4.0 * zeta(a - 2.0) + 2.0 * zeta(a) -
                 coeff * std::pow(nn, 1.0 - a / 3.0);
      r.e_k1 =
          4.0 * zeta(a - 2.0) + 2.0 * zeta(a) +
          (-std::pow(2.0, a) * f12(0.5 * (3.0 - a), 0.5, 0.5 * (5.0 - a)) /
               ((a - 3.0) * (a - 2.0) * (a - 1.0)) +
           (std::pow(2.0, a) * kk(a - 2.0, 1.0) - 4.0 * kk(a - 2.0, 2.0) -
            std::pow(2.0, a - 1.0) * std::pow(3.0, 3.0 - a) * kk(a - 2.0, 3.0)) /
               ((a - 2.0) * (a - 1.0))) *
              std::pow(nn, 1.0 - a / 3.0);
      r.e_kmax = (std::pow(2.0, 5.0 - a) - 4.0) * zeta(a - 2.0) +
                 (std::pow(2.0, 2.0 - a) - 2.0) * zeta(a);
      break;
    }
    case 4: {
      r.kappa0 = 8.0 / 3.0 * zeta(a - 3.0) + 16.0 / 3.0 * zeta(a - 1.0) -
                 4.0 *
                     (-std::pow(2.0, 6.0 - a) + std::pow(2.0, a) +
                      std::pow(2.0, a) * std::pow(3.0, 4.0 - a) - 24.0) /
                     ((a - 4.0) * (a - 3.0) * (a - 2.0) * (a - 1.0)) *
                     std::pow(nn, 1.0 - 0.25 * a);
      r.e_k1 =
          8.0 / 3.0 * zeta(a - 3.0) + 16.0 / 3.0 * zeta(a - 1.0) -
          (std::pow(2.0, a) * f12(0.5 * (4.0 - a), 0.5, 0.5 * (6.0 - a)) /
               ((a - 4.0) * (a - 3.0) * (a - 2.0) * (a - 1.0)) -
           (3.0 * std::pow(2.0, a - 1.0) * kk(a - 3.0, 1.0) -
            std::pow(2.0, a) * std::pow(3.0, 4.0 - a) * kk(a - 3.0, 3.0) -
            std::pow(2.0, 7.0 - a) * kk(a - 3.0, 4.0)) /
               ((a - 3.0) * (a - 2.0) * (a - 1.0))) *
              std::pow(nn, 1.0 - 0.25 * a);
      r.e_kmax = (std::pow(2.0, 7.0 - a) - 8.0) / 3.0 * zeta(a - 3.0) +
                 (std::pow(2.0, 6.0 - a) - 16.0) / 3.0 * zeta(a - 1.0);
      break;
    }
    default:
      throw std::invalid_argument("asymptotics: bad dim");
  }
  return r;
}

// Excluded integer orders inside (0, dim) get the average of the two
// +-1e-6 limits; the averaging also cancels simple zeta poles.
bool excluded_integer(int dim, double alpha, double* where) {
  for (int m = 1; m < dim; ++m) {
    if (near(alpha, static_cast<double>(m))) {
      *where = static_cast<double>(m);
      return true;
    }
  }
  return false;
}

}  // namespace

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kMimicsComplete:
      return "mimics-complete";
    case RegimeKind::kIntermediate:
      return "intermediate";
    case RegimeKind::kShortRange:
      return "short-range";
  }
  return "unknown";
}

Regime classify(int dim, double alpha) {
  validate_dim(dim);
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("classify: alpha must be finite and >= 0");
  const double d = static_cast<double>(dim);
  if (near(alpha, d, 1e-12) || near(alpha, d + 2.0, 1e-12))
    throw std::domain_error("classify: alpha on a regime boundary");
  Regime regime;
  if (alpha < d)
    regime.kind = RegimeKind::kMimicsComplete;
  else if (alpha < d + 2.0)
    regime.kind = RegimeKind::kIntermediate;
  else
    regime.kind = RegimeKind::kShortRange;
  regime.optimal = alpha < 1.5 * d;
  return regime;
}

double const_c1(int dim, double alpha) {
  validate_dim(dim);
  if (!(alpha >= 0.0) || alpha >= static_cast<double>(dim))
    throw std::domain_error("const_c1: requires 0 <= alpha < d");
  double m = 0.0;
  if (excluded_integer(dim, alpha, &m))
    return 0.5 * (c1_raw(dim, m - 1e-6) + c1_raw(dim, m + 1e-6));
  return c1_raw(dim, alpha);
}

double const_c2(int dim, double alpha) {
  validate_dim(dim);
  const double d = static_cast<double>(dim);
  if (!(alpha > d) || !(alpha < d + 2.0))
    throw std::domain_error("const_c2: requires d < alpha < d + 2");
  return c2_raw(dim, alpha);
}

AsymptoticGap gap_asymptotic(int dim, double alpha, double n_sites) {
  AsymptoticGap gap;
  gap.regime = classify(dim, alpha);
  const double d = static_cast<double>(dim);
  switch (gap.regime.kind) {
    case RegimeKind::kMimicsComplete:
      gap.exponent = 0.0;
      gap.constant = const_c1(dim, alpha);
      gap.predicted = 1.0 - *gap.constant;
      break;
    case RegimeKind::kIntermediate:
      gap.exponent = 1.0 - alpha / d;
      gap.constant = const_c2(dim, alpha);
      gap.predicted = *gap.constant * std::pow(n_sites, gap.exponent);
      break;
    case RegimeKind::kShortRange:
      gap.exponent = -2.0 / d;
      break;
  }
  return gap;
}

UnscaledAsymptotics unscaled_asymptotics(int dim, double alpha,
                                         double n_sites) {
  validate_dim(dim);
  const double d = static_cast<double>(dim);
  if (!(alpha >= 0.0) || !(alpha < d + 2.0))
    throw std::domain_error("unscaled_asymptotics: requires 0 <= alpha < d+2");
  if (near(alpha, d))
    throw std::domain_error("unscaled_asymptotics: alpha = d is excluded");

  UnscaledAsymptotics result;
  double m = 0.0;
  RawUnscaled raw{};
  if (excluded_integer(dim, alpha, &m)) {
    const RawUnscaled lo = unscaled_raw(dim, m - 1e-6, n_sites);
    const RawUnscaled hi = unscaled_raw(dim, m + 1e-6, n_sites);
    raw = {0.5 * (lo.kappa0 + hi.kappa0), 0.5 * (lo.e_k1 + hi.e_k1),
           0.5 * (lo.e_kmax + hi.e_kmax)};
    result.limit_evaluated = true;
  } else {
    raw = unscaled_raw(dim, alpha, n_sites);
  }
  result.kappa0 = raw.kappa0;
  result.delta = raw.kappa0 - raw.e_k1;   // positive-semidefinite convention
  result.e_kmax = raw.kappa0 - raw.e_kmax;
  return result;
}

double spectral_dimension(int dim, double alpha) {
  validate_dim(dim);
  const double d = static_cast<double>(dim);
  if (!(alpha > d) || !(alpha < d + 2.0))
    throw std::domain_error("spectral_dimension: requires d < alpha < d + 2");
  return 2.0 * d / (alpha - d);
}

double chi_asymptotic(int dim, double alpha) {
  validate_dim(dim);
  if (!(alpha >= 0.0))
    throw std::invalid_argument("chi_asymptotic: alpha must be >= 0");
  const double ratio = alpha / static_cast<double>(dim);
  if (ratio <= 1.0) return 1.0;
  if (ratio >= 1.5) return 0.0;
  return std::sqrt(3.0 - 2.0 * ratio) / (2.0 - ratio);
}

double continuum_dispersion(int dim, double alpha, double k) {
  validate_dim(dim);
  if (!(k > 0.0))
    throw std::invalid_argument("continuum_dispersion: requires k > 0");
  const double d = static_cast<double>(dim);
  if (near(alpha, d + 2.0) || !(alpha > d))
    throw std::domain_error(
        "continuum_dispersion: requires alpha in (d, d+2) or alpha > d+2");

  const bool intermediate = alpha < d + 2.0;
  double prefactor = 0.0;
  if (intermediate) {
    switch (dim) {
      case 1:
        prefactor = std::abs(sin_gamma(alpha));
        break;
      case 2:
        prefactor = std::abs(std::pow(2.0, -alpha - 1.0) * kPi * alpha *
                             specfun::gamma_fn(-0.5 * alpha) /
                             specfun::gamma_fn(0.5 * alpha));
        break;
      case 3:
        // sin(pi a/2) Gamma(2-a) = (1-a) sin(pi a/2) Gamma(1-a)
        prefactor = std::abs(2.0 * kPi * (1.0 - alpha) * sin_gamma(alpha));
        break;
      case 4:
        prefactor = std::abs(kPi * kPi * std::pow(2.0, 4.0 - alpha) *
                             specfun::gamma_fn(2.0 - 0.5 * alpha) /
                             specfun::gamma_fn(0.5 * alpha));
        break;
    }
    return prefactor * std::pow(k, alpha - d);
  }
  switch (dim) {
    case 1:
      prefactor = 0.5 / (alpha - 3.0);
      break;
    case 2:
      prefactor = kPi / (8.0 * (alpha - 4.0));
      break;
    case 3:
      prefactor = kPi / (3.0 * (alpha - 5.0));
      break;
    case 4:
      prefactor = kPi * kPi / (4.0 * (alpha - 6.0));
      break;
  }
  return prefactor * k * k;
}

double s_ell_continuum(int dim, double alpha, int ell) {
  validate_dim(dim);
  if (ell < 1)
    throw std::invalid_argument("s_ell_continuum: ell must be >= 1");
  const double d = static_cast<double>(dim);
  const double denom = d + ell * (d - alpha);
  if (!(denom > 0.0))
    throw std::domain_error(
        "s_ell_continuum: integral diverges, d + ell (d - alpha) <= 0");
  return 1.0 / denom;
}

}  // namespace qwsearch::asymptotics
