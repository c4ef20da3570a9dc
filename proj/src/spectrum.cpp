// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_plan.hpp"
#include "qwsearch/errors.hpp"

namespace qwsearch::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

// F(E) - 1 and F'(E) over grouped poles; hot path of the root finder.
struct SecularFunction {
  const std::vector<lattice::DistinctLevel>& poles;
  double gamma0;
  double inv_sites;

  double value(double energy) const {
    double sum = 0.0;
    for (const auto& level : poles)
      sum += level.multiplicity / (gamma0 * level.value - energy);
    return sum * inv_sites;
  }
  double derivative(double energy) const {
    double sum = 0.0;
    for (const auto& level : poles) {
      const double d = gamma0 * level.value - energy;
      sum += level.multiplicity / (d * d);
    }
    return sum * inv_sites;
  }
};

// One root of F(E) = 1 in the open interval (lo, hi), where F - 1 increases
// from -inf to +inf.  Bisection first, then clamped Newton steps.
double solve_bracket(const SecularFunction& f, double lo, double hi) {
  double a = lo;
  double b = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // interval exhausted in doubles
    (f.value(mid) < 1.0 ? a : b) = mid;
    if (b - a <= 1e-13 * std::max(std::abs(a), std::abs(b))) break;
  }
  double root = 0.5 * (a + b);
  for (int iter = 0; iter < 4; ++iter) {
    const double residual = f.value(root) - 1.0;
    const double candidate = root - residual / f.derivative(root);
    if (!(candidate > a) || !(candidate < b)) break;
    root = candidate;
  }
  return root;
}

}  // namespace

void SearchParams::validate() const {
  if (table == nullptr)
    throw std::invalid_argument("SearchParams: missing dispersion table");
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("SearchParams: gamma0 must be > 0");
  if (target < 0 || target >= table->spec.sites())
    throw std::invalid_argument("SearchParams: target outside [0, N)");
}

double s_ell(const lattice::DispersionTable& table, int ell) {
  if (ell < 1) throw std::invalid_argument("s_ell: ell must be >= 1");
  double sum = 0.0;
  for (const auto& level : table.distinct) {
    if (level.value <= 0.0) continue;  // the k = 0 state is excluded
    sum += level.multiplicity * std::pow(level.value, -ell);
  }
  return sum / static_cast<double>(table.spec.sites());
}

double gamma_critical(const lattice::DispersionTable& table) {
  return s_ell(table, 1);
}

double chi(const lattice::DispersionTable& table) {
  return s_ell(table, 1) / std::sqrt(s_ell(table, 2));
}

double transcendental_f(const SearchParams& params, double energy) {
  params.validate();
  const auto& table = *params.table;
  for (const auto& level : table.distinct) {
    const double pole = params.gamma0 * level.value;
    if (std::abs(pole - energy) <= 1e-13 * (std::abs(pole) + std::abs(energy)))
      throw std::domain_error("transcendental_f: energy too close to a pole");
  }
  const SecularFunction f{table.distinct, params.gamma0,
                          1.0 / static_cast<double>(table.spec.sites())};
  return f.value(energy);
}

double transcendental_f_prime(const SearchParams& params, double energy) {
  params.validate();
  const auto& table = *params.table;
  for (const auto& level : table.distinct) {
    const double pole = params.gamma0 * level.value;
    if (std::abs(pole - energy) <= 1e-13 * (std::abs(pole) + std::abs(energy)))
      throw std::domain_error(
          "transcendental_f_prime: energy too close to a pole");
  }
  const SecularFunction f{table.distinct, params.gamma0,
                          1.0 / static_cast<double>(table.spec.sites())};
  return f.derivative(energy);
}

SearchSpectrum solve_spectrum(const SearchParams& params) {
  params.validate();
  const auto& table = *params.table;
  const std::int64_t n_sites = table.spec.sites();
  const std::size_t n_poles = table.distinct.size();
  const SecularFunction f{table.distinct, params.gamma0,
                          1.0 / static_cast<double>(n_sites)};

  SearchSpectrum spectrum;
  spectrum.gamma0 = params.gamma0;
  spectrum.sites = n_sites;
  spectrum.chi = chi(table);
  spectrum.poles.reserve(n_poles);
  for (const auto& level : table.distinct)
    spectrum.poles.push_back(
        {params.gamma0 * level.value, level.multiplicity});

  spectrum.roots.reserve(n_poles);

  // Ground root on (-inf, 0): F <= 1/(-E) there, so F(-1) <= 1 already;
  // expand downward if a pathological case needs it.
  double lo = -1.0;
  while (f.value(lo) >= 1.0) lo *= 2.0;
  spectrum.roots.push_back(solve_bracket(f, lo, 0.0));

  for (std::size_t i = 0; i + 1 < n_poles; ++i)
    spectrum.roots.push_back(solve_bracket(f, spectrum.poles[i].value,
                                           spectrum.poles[i + 1].value));

  if (spectrum.roots.size() != n_poles)
    throw validation_error("solve_spectrum: root count != distinct pole count");

  spectrum.w_sq.reserve(n_poles);
  spectrum.s_sq.reserve(n_poles);
  double w_total = 0.0;
  double s_total = 0.0;
  for (double root : spectrum.roots) {
    const double w = 1.0 / f.derivative(root);
    const double s = w / (static_cast<double>(n_sites) * root * root);
    spectrum.w_sq.push_back(w);
    spectrum.s_sq.push_back(s);
    w_total += w;
    s_total += s;
  }
  if (std::abs(w_total - 1.0) > 1e-10)
    throw validation_error("solve_spectrum: sum |W_i|^2 deviates from 1");
  if (std::abs(s_total - 1.0) > 1e-10)
    throw validation_error("solve_spectrum: sum |S_i|^2 deviates from 1");
  return spectrum;
}

std::complex<double> amplitude(const SearchSpectrum& spectrum, double t) {
  // A(t) = -(1/sqrt(N)) sum_i w_i / E_i exp(-i E_i t); the overall sign is
  // pinned by A(0) = 1/sqrt(N) and the dense oracle.
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(spectrum.sites));
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < spectrum.roots.size(); ++i) {
    const double coeff = -spectrum.w_sq[i] / spectrum.roots[i];
    const double phase = -spectrum.roots[i] * t;
    sum += coeff * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return inv_sqrt_n * sum;
}

SearchTime search_time(const SearchSpectrum& spectrum) {
  const double scale =
      kPi * std::sqrt(static_cast<double>(spectrum.sites)) / spectrum.chi;
  const double step = scale / 400.0;
  const double horizon = 4.0 * scale;

  auto fidelity = [&](double t) { return std::norm(amplitude(spectrum, t)); };

  double t_prev = 0.0;
  double f_prev = fidelity(0.0);
  double t_mid = step;
  double f_mid = fidelity(step);
  bool found = false;
  double t_next = 0.0;
  for (double t = 2.0 * step; t <= horizon; t += step) {
    const double f_t = fidelity(t);
    if (f_mid >= f_prev && f_t < f_mid) {
      t_next = t;
      found = true;
      break;
    }
    t_prev = t_mid;
    f_prev = f_mid;
    t_mid = t;
    f_mid = f_t;
  }
  if (!found)
    throw convergence_error(
        "search_time: |A|^2 still rising at the scan horizon");

  // golden-section maximization on (t_prev, t_next)
  constexpr double kInvPhi = 0.61803398874989485;
  double a = t_prev;
  double b = t_next;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fidelity(x1);
  double f2 = fidelity(x2);
  while (b - a > 1e-6 * b) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fidelity(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fidelity(x1);
    }
  }
  const double t_star = 0.5 * (a + b);
  return {t_star, fidelity(t_star)};
}

std::pair<double, double> two_level_energies(double s1, double s2,
                                             double gamma0,
                                             std::int64_t n_sites) {
  if (!(s2 > 0.0))
    throw std::invalid_argument("two_level_energies: S2 must be > 0");
  const double prefactor = gamma0 / (2.0 * s2);
  const double discriminant = std::sqrt(
      (s1 - gamma0) * (s1 - gamma0) + 4.0 * s2 / static_cast<double>(n_sites));
  const double e_minus = prefactor * (gamma0 - s1 - discriminant);
  const double e_plus = prefactor * (gamma0 - s1 + discriminant);
  return {e_minus, e_plus};
}

CompleteGraphReference complete_graph_reference(std::int64_t n_sites,
                                                double gamma0) {
  if (n_sites < 2)
    throw std::invalid_argument("complete_graph_reference: N must be >= 2");
  const double n = static_cast<double>(n_sites);
  const double gap =
      std::sqrt(4.0 * gamma0 * (1.0 - n) + (gamma0 * n + 1.0) * (gamma0 * n + 1.0));
  return {gap, 1.0 / n};
}

std::vector<double> ground_state_profile(const SearchParams& params,
                                         const SearchSpectrum& spectrum,
                                         std::int64_t site_cap) {
  params.validate();
  const auto& table = *params.table;
  const std::int64_t n_sites = table.spec.sites();
  if (n_sites > site_cap)
    throw resource_error("ground_state_profile: N exceeds the cap");

  const double e0 = spectrum.roots.front();
  std::vector<std::complex<double>> in(n_sites);
  std::vector<std::complex<double>> out(n_sites);
  for (std::int64_t k = 0; k < n_sites; ++k)
    in[k] = 1.0 / (params.gamma0 * table.values[k] - e0);

  detail::run_dft(table.spec.dim, table.spec.size, in.data(), out.data(),
                  FFTW_BACKWARD);

  // the transform is centered on site 0; translate it onto the target
  const int n = table.spec.size;
  std::vector<double> profile(n_sites);
  double norm_sq = 0.0;
  for (std::int64_t j = 0; j < n_sites; ++j) {
    std::int64_t rest_j = j;
    std::int64_t rest_w = params.target;
    std::int64_t shifted = 0;
    std::int64_t stride = 1;
    for (int axis = table.spec.dim - 1; axis >= 0; --axis) {
      const int jc = static_cast<int>(rest_j % n);
      const int wc = static_cast<int>(rest_w % n);
      rest_j /= n;
      rest_w /= n;
      shifted += static_cast<std::int64_t>((jc - wc + n) % n) * stride;
      stride *= n;
    }
    profile[j] = out[shifted].real();
    norm_sq += profile[j] * profile[j];
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  const double sign = profile[params.target] < 0.0 ? -1.0 : 1.0;
  for (double& a : profile) a *= sign * inv_norm;
  return profile;
}

double participation_ratio(std::span<const double> amplitudes) {
  double norm_sq = 0.0;
  double quartic = 0.0;
  for (double a : amplitudes) {
    norm_sq += a * a;
    quartic += a * a * a * a;
  }
  if (std::abs(norm_sq - 1.0) > 1e-8)
    throw std::invalid_argument(
        "participation_ratio: amplitudes are not normalized");
  return 1.0 / quartic;
}

}  // namespace qwsearch::spectrum
