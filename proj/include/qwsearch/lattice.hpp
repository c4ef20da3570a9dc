// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_LATTICE_HPP
#define QWSEARCH_LATTICE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qwsearch::lattice {

enum class Norm { kEuclidean, kManhattan };

std::string to_string(Norm norm);

/// Periodic hypercubic lattice with power-law couplings 1/||j||^alpha.
/// Fully determines the hopping graph.
struct LatticeSpec {
  int dim = 1;          // d in {1,2,3,4}
  int size = 4;         // sites per dimension, even, >= 4
  double alpha = 1.0;   // tunneling exponent, >= 0, finite
  Norm norm = Norm::kEuclidean;

  std::int64_t sites() const;          // N = size^dim
  void validate() const;               // throws std::invalid_argument
};

struct DistinctLevel {
  double value = 0.0;
  std::int64_t multiplicity = 0;
};

/// All Laplacian eigenvalues eps(k) over the Brillouin zone, shifted so that
/// eps(0) = 0 and eps >= 0.  Momentum grid point m (row-major, each component
/// in [0, n)) carries k = 2 pi m / n.
struct DispersionTable {
  LatticeSpec spec;
  std::vector<double> values;           // eps(k), row-major over the grid
  double kappa0 = 0.0;                  // sum over j != 0 of the couplings
  double eps_kmax = 0.0;                // eps at k = (pi, ..., pi)
  std::vector<DistinctLevel> distinct;  // grouped values, strictly ascending

  double grouping_tolerance() const { return 1e-9 * eps_kmax; }
};

inline constexpr std::int64_t kDefaultSiteCap = std::int64_t{1} << 22;
inline constexpr std::int64_t kDefaultDenseCap = 4096;

/// Coupling 1/||j||^alpha for a displacement j != 0 with components in the
/// fundamental window {-n/2+1, ..., n/2}.
double coupling(const LatticeSpec& spec, std::span<const int> displacement);

/// Dispersion over the full Brillouin zone via a d-dimensional FFT of the
/// coupling array.  Throws resource_error when N exceeds site_cap.
DispersionTable build_dispersion(const LatticeSpec& spec,
                                 std::int64_t site_cap = kDefaultSiteCap);

/// Exact kappa0 for d = 1: 2 H_{n/2}^(alpha) - 2^alpha n^-alpha.
double kappa0_closed_form_d1(int n, double alpha);

/// eps(k_1) with k_1 = (2 pi / n, 0, ..., 0); checked against the minimum of
/// eps over k != 0 within the grouping tolerance.
double spectral_gap(const DispersionTable& table);

/// Delta = eps(k_1) / eps(k_max), in (0, 1].
double rescaled_gap(const DispersionTable& table);

struct DosPoint {
  double lambda = 0.0;    // eps / eps(k_max)
  double fraction = 0.0;  // cumulative state fraction, in (0, 1]
};

/// Empirical cumulative density of states over the rescaled spectrum.
std::vector<DosPoint> cumulative_dos(const DispersionTable& table);

/// Spectral dimension 2 * slope of log(fraction) vs log(lambda), fitted by
/// least squares over points with lambda strictly inside the window.
/// Requires at least 10 points in the window.
double estimate_spectral_dimension(std::span<const DosPoint> dos,
                                   double lambda_lo, double lambda_hi);

}  // namespace qwsearch::lattice

#endif  // QWSEARCH_LATTICE_HPP
