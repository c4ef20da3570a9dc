// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_ORACLE_HPP
#define QWSEARCH_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwsearch/lattice.hpp"
#include "qwsearch/spectrum.hpp"

// Brute-force ground truth at desk scale.  Nothing here knows about the
// momentum-space reduction: Hamiltonians are built entry by entry and
// diagonalized densely.

namespace qwsearch::oracle {

/// Dense realization of H = -gamma0 L - |w><w| (with -gamma0 L shifted to be
/// positive semidefinite), plus its full eigensystem once diagonalized.
struct DenseSystem {
  spectrum::SearchParams params;
  std::int64_t n_sites = 0;
  std::vector<double> hamiltonian;   // row-major N x N, symmetric
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> eigenvectors;  // column-major N x N, orthonormal columns
  bool diagonalized = false;
};

/// Builds the dense matrix: H[a][a] = gamma0 kappa0 - [a == target],
/// H[a][b] = -gamma0 c(a - b) with minimal-image displacements.
DenseSystem dense_hamiltonian(const spectrum::SearchParams& params,
                              std::int64_t cap = lattice::kDefaultDenseCap);

/// Full symmetric eigendecomposition (Householder tridiagonalization plus
/// divide and conquer, LAPACK dsyevd).
void dense_diagonalize(DenseSystem& system);

/// A(t) = sum_i <w|v_i><v_i|s> exp(-i E_i t) over the full spectrum.
std::complex<double> dense_amplitude(const DenseSystem& system, double t);

/// eps(k) by the direct O(N^2) double sum, no FFT.
std::vector<double> brute_dispersion(const lattice::LatticeSpec& spec,
                                     std::int64_t cap = std::int64_t{1} << 16);

/// Ground-state participation ratio per gamma0 value, via dense
/// diagonalization at each point.
std::vector<std::pair<double, double>> dense_participation_sweep(
    const lattice::LatticeSpec& spec, std::span<const double> gamma_values,
    std::int64_t cap = lattice::kDefaultDenseCap);

/// Dense search eigensystem data for several gamma0 over one lattice: all
/// eigenvalues plus the overlaps <w|v_i> and <s|v_i>.  The hopping part is
/// Householder-tridiagonalized once (the reflectors fix the target axis, so
/// the marked-site shift stays on the tridiagonal for every gamma0) and the
/// tridiagonal problem is solved per gamma0.  Exact dense diagonalization at
/// a third of the cost of repeated dsyevd calls; cross-checked against
/// dense_diagonalize in the tests.
struct DenseSearchEntry {
  double gamma0 = 0.0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> w_overlap;    // <w|v_i>, signed
  std::vector<double> s_overlap;    // <s|v_i>, signed
};

std::vector<DenseSearchEntry> dense_search_batch(
    const lattice::LatticeSpec& spec, std::span<const double> gamma_values,
    std::int64_t cap = lattice::kDefaultDenseCap);

/// A(t) from a batch entry.
std::complex<double> batch_amplitude(const DenseSearchEntry& entry, double t);

}  // namespace qwsearch::oracle

#endif  // QWSEARCH_ORACLE_HPP
