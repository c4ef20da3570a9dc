// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_SPECTRUM_HPP
#define QWSEARCH_SPECTRUM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwsearch/lattice.hpp"

namespace qwsearch::spectrum {

/// Inputs of one search problem: dispersion table, hopping weight gamma0 and
/// the marked site.  The table must outlive the params.
struct SearchParams {
  const lattice::DispersionTable* table = nullptr;
  double gamma0 = 0.0;
  std::int64_t target = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Exact search eigensystem restricted to the overlap-carrying states: the M
/// roots of F(E) = 1 interlacing the M distinct poles gamma0 * eps, with the
/// squared overlaps onto the target state |W_i|^2 and the uniform state
/// |S_i|^2.
struct SearchSpectrum {
  std::vector<double> roots;    // ascending; roots[0] < 0
  std::vector<double> w_sq;     // 1 / F'(E_i), sums to 1
  std::vector<double> s_sq;     // w_sq / (N E_i^2), sums to 1
  std::vector<lattice::DistinctLevel> poles;  // gamma0 * distinct eps
  double gamma0 = 0.0;
  double chi = 0.0;             // order parameter of the underlying table
  std::int64_t sites = 0;
};

/// S_ell = (1/N) sum_{k != 0} eps(k)^-ell, ell in {1, 2}.
double s_ell(const lattice::DispersionTable& table, int ell);

/// Critical hopping weight gamma_c = S_1.
double gamma_critical(const lattice::DispersionTable& table);

/// Order parameter chi = S_1 / sqrt(S_2), in (0, 1].
double chi(const lattice::DispersionTable& table);

/// F(E) = (1/N) sum_k 1 / (gamma0 eps(k) - E).  E must stay clear of every
/// pole by 1e-13 relative.
double transcendental_f(const SearchParams& params, double energy);

/// F'(E) = (1/N) sum_k 1 / (gamma0 eps(k) - E)^2.
double transcendental_f_prime(const SearchParams& params, double energy);

/// All M roots of F(E) = 1, bracketed between consecutive distinct poles,
/// bisected to 1e-13 relative width and polished with F'.
SearchSpectrum solve_spectrum(const SearchParams& params);

/// Transfer amplitude A(t) = <w| exp(-i H t) |s> from the solved spectrum.
std::complex<double> amplitude(const SearchSpectrum& spectrum, double t);

struct SearchTime {
  double time = 0.0;      // first local maximum of |A(t)|^2 for t > 0
  double fidelity = 0.0;  // |A(T)|^2 there
};

/// Scans |A(t)|^2 with step (pi sqrt(N)/chi)/400 up to 4 pi sqrt(N)/chi and
/// refines the first maximum by golden sections to 1e-6 relative.
SearchTime search_time(const SearchSpectrum& spectrum);

/// Two-level closed form E_i = gamma0/(2 S2) [gamma0 - S1 -+ sqrt((S1-gamma0)^2
/// + 4 S2/N)]; returns (E0, E1) with E0 <= E1.
std::pair<double, double> two_level_energies(double s1, double s2,
                                             double gamma0,
                                             std::int64_t n_sites);

struct CompleteGraphReference {
  double gap = 0.0;      // sqrt(4 gamma0 (1 - N) + (gamma0 N + 1)^2)
  double gamma_c = 0.0;  // 1 / N
};

/// Farhi-Gutmann complete-graph baseline.
CompleteGraphReference complete_graph_reference(std::int64_t n_sites,
                                                double gamma0);

/// Real-space ground-state amplitudes over all sites, normalized, via the
/// inverse Fourier sum of 1/(gamma0 eps(k) - E0).
std::vector<double> ground_state_profile(
    const SearchParams& params, const SearchSpectrum& spectrum,
    std::int64_t site_cap = lattice::kDefaultSiteCap);

/// 1 / sum_j a_j^4 for a normalized amplitude vector; in [1, N].
double participation_ratio(std::span<const double> amplitudes);

}  // namespace qwsearch::spectrum

#endif  // QWSEARCH_SPECTRUM_HPP
