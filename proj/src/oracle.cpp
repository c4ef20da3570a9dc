// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qwsearch/errors.hpp"

extern "C" {
void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a,
             const int* lda, double* w, double* work, const int* lwork,
             int* iwork, const int* liwork, int* info);
void dsytrd_(const char* uplo, const int* n, double* a, const int* lda,
             double* d, double* e, double* tau, double* work, const int* lwork,
             int* info);
void dstedc_(const char* compz, const int* n, double* d, double* e, double* z,
             const int* ldz, double* work, const int* lwork, int* iwork,
             const int* liwork, int* info);
void dormtr_(const char* side, const char* uplo, const char* trans,
             const int* m, const int* n, const double* a, const int* lda,
             const double* tau, double* c, const int* ldc, double* work,
             const int* lwork, int* info);
void dgemv_(const char* trans, const int* m, const int* n, const double* alpha,
            const double* a, const int* lda, const double* x, const int* incx,
            const double* beta, double* y, const int* incy);
}

namespace qwsearch::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Minimal-image coupling between two sites, straight from the definition.
struct SiteGeometry {
  int dim;
  int size;

  void decode(std::int64_t site, int* coords) const {
    for (int axis = dim - 1; axis >= 0; --axis) {
      coords[axis] = static_cast<int>(site % size);
      site /= size;
    }
  }

  // displacement component folded into (-n/2, n/2]
  int fold(int a, int b) const {
    int d = (a - b) % size;
    if (d < 0) d += size;
    if (d > size / 2) d -= size;
    return d;
  }
};

double coupling_of(const lattice::LatticeSpec& spec, const int* j) {
  if (spec.norm == lattice::Norm::kManhattan) {
    int l1 = 0;
    for (int axis = 0; axis < spec.dim; ++axis) l1 += std::abs(j[axis]);
    return std::pow(static_cast<double>(l1), -spec.alpha);
  }
  std::int64_t l2sq = 0;
  for (int axis = 0; axis < spec.dim; ++axis)
    l2sq += static_cast<std::int64_t>(j[axis]) * j[axis];
  return std::pow(static_cast<double>(l2sq), -0.5 * spec.alpha);
}

// kappa0 by direct summation over the displacement window.
double window_sum(const lattice::LatticeSpec& spec) {
  const std::int64_t n_sites = spec.sites();
  const int n = spec.size;
  double sum = 0.0;
  int j[4] = {0, 0, 0, 0};
  for (std::int64_t idx = 1; idx < n_sites; ++idx) {
    std::int64_t rest = idx;
    for (int axis = spec.dim - 1; axis >= 0; --axis) {
      const int m = static_cast<int>(rest % n);
      rest /= n;
      j[axis] = (m <= n / 2) ? m : m - n;
    }
    sum += coupling_of(spec, j);
  }
  return sum;
}

// Dense hopping-plus-shift matrix gamma0 (kappa0 I - C) - |target><target|,
// column-major (symmetric, so the layout matters only to LAPACK).
std::vector<double> build_dense(const lattice::LatticeSpec& spec,
                                double gamma0, std::int64_t target) {
  const std::int64_t n_sites = spec.sites();
  const double kappa0 = window_sum(spec);
  const SiteGeometry geom{spec.dim, spec.size};

  std::vector<double> h(static_cast<std::size_t>(n_sites) * n_sites, 0.0);
  std::vector<int> coords(static_cast<std::size_t>(n_sites) * spec.dim);
  for (std::int64_t a = 0; a < n_sites; ++a)
    geom.decode(a, &coords[a * spec.dim]);

  int j[4] = {0, 0, 0, 0};
  for (std::int64_t a = 0; a < n_sites; ++a) {
    h[a * n_sites + a] = gamma0 * kappa0 - (a == target ? 1.0 : 0.0);
    for (std::int64_t b = 0; b < a; ++b) {
      for (int axis = 0; axis < spec.dim; ++axis)
        j[axis] = geom.fold(coords[a * spec.dim + axis],
                            coords[b * spec.dim + axis]);
      const double value = -gamma0 * coupling_of(spec, j);
      h[a * n_sites + b] = value;
      h[b * n_sites + a] = value;
    }
  }
  return h;
}

int lapack_int(std::int64_t v) { return static_cast<int>(v); }

}  // namespace

DenseSystem dense_hamiltonian(const spectrum::SearchParams& params,
                              std::int64_t cap) {
  params.validate();
  const lattice::LatticeSpec& spec = params.table->spec;
  const std::int64_t n_sites = spec.sites();
  if (n_sites > cap)
    throw resource_error("dense_hamiltonian: N = " + std::to_string(n_sites) +
                         " exceeds the dense cap " + std::to_string(cap));
  DenseSystem system;
  system.params = params;
  system.n_sites = n_sites;
  system.hamiltonian = build_dense(spec, params.gamma0, params.target);
  return system;
}

void dense_diagonalize(DenseSystem& system) {
  const int n = lapack_int(system.n_sites);
  system.eigenvectors = system.hamiltonian;
  system.eigenvalues.assign(n, 0.0);

  int lwork = -1, liwork = -1, info = 0;
  double work_query = 0.0;
  int iwork_query = 0;
  dsyevd_("V", "L", &n, system.eigenvectors.data(), &n,
          system.eigenvalues.data(), &work_query, &lwork, &iwork_query,
          &liwork, &info);
  lwork = static_cast<int>(work_query);
  liwork = iwork_query;
  std::vector<double> work(lwork);
  std::vector<int> iwork(liwork);
  dsyevd_("V", "L", &n, system.eigenvectors.data(), &n,
          system.eigenvalues.data(), work.data(), &lwork, iwork.data(),
          &liwork, &info);
  if (info != 0)
    throw convergence_error("dense_diagonalize: dsyevd info = " +
                            std::to_string(info));

  // Residual spot check |H v - lambda v| <= 1e-9 |H|; every pair when small,
  // strided above N = 1024.
  double h_scale = 0.0;
  for (double v : system.hamiltonian) h_scale = std::max(h_scale, std::abs(v));
  const std::int64_t stride = std::max<std::int64_t>(1, system.n_sites / 64);
  const std::int64_t check_stride = system.n_sites <= 1024 ? 1 : stride;
  std::vector<double> hv(system.n_sites);
  for (std::int64_t i = 0; i < system.n_sites; i += check_stride) {
    const double one = 1.0, zero = 0.0;
    const int inc = 1;
    dgemv_("N", &n, &n, &one, system.hamiltonian.data(), &n,
           &system.eigenvectors[i * system.n_sites], &inc, &zero, hv.data(),
           &inc);
    double residual = 0.0;
    for (std::int64_t row = 0; row < system.n_sites; ++row)
      residual = std::max(residual,
                          std::abs(hv[row] - system.eigenvalues[i] *
                                                 system.eigenvectors
                                                     [i * system.n_sites + row]));
    if (residual > 1e-9 * std::max(h_scale, 1.0))
      throw validation_error("dense_diagonalize: residual check failed");
  }
  system.diagonalized = true;
}

std::complex<double> dense_amplitude(const DenseSystem& system, double t) {
  if (!system.diagonalized)
    throw std::logic_error("dense_amplitude: system not diagonalized");
  const std::int64_t n = system.n_sites;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::complex<double> sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double* column = &system.eigenvectors[i * n];
    const double w_i = column[system.params.target];
    double s_i = 0.0;
    for (std::int64_t row = 0; row < n; ++row) s_i += column[row];
    s_i *= inv_sqrt_n;
    const double phase = -system.eigenvalues[i] * t;
    sum += w_i * s_i * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum;
}

std::vector<double> brute_dispersion(const lattice::LatticeSpec& spec,
                                     std::int64_t cap) {
  spec.validate();
  const std::int64_t n_sites = spec.sites();
  if (n_sites > cap)
    throw resource_error("brute_dispersion: N exceeds the cap");

  const int n = spec.size;
  // window table: displacement components and coupling per grid point
  std::vector<int> jtab(static_cast<std::size_t>(n_sites) * spec.dim);
  std::vector<double> ctab(n_sites, 0.0);
  int j[4] = {0, 0, 0, 0};
  for (std::int64_t idx = 1; idx < n_sites; ++idx) {
    std::int64_t rest = idx;
    for (int axis = spec.dim - 1; axis >= 0; --axis) {
      const int m = static_cast<int>(rest % n);
      rest /= n;
      j[axis] = (m <= n / 2) ? m : m - n;
      jtab[idx * spec.dim + axis] = j[axis];
    }
    ctab[idx] = coupling_of(spec, j);
  }

  std::vector<double> eps(n_sites);
  int m[4] = {0, 0, 0, 0};
  for (std::int64_t kidx = 0; kidx < n_sites; ++kidx) {
    std::int64_t rest = kidx;
    for (int axis = spec.dim - 1; axis >= 0; --axis) {
      m[axis] = static_cast<int>(rest % n);
      rest /= n;
    }
    double e_k = 0.0;
    double kappa = 0.0;
    for (std::int64_t idx = 1; idx < n_sites; ++idx) {
      double k_dot_j = 0.0;
      for (int axis = 0; axis < spec.dim; ++axis)
        k_dot_j += m[axis] * jtab[idx * spec.dim + axis];
      e_k += ctab[idx] * std::cos(2.0 * kPi * k_dot_j / n);
      kappa += ctab[idx];
    }
    eps[kidx] = kappa - e_k;
  }
  return eps;
}

std::vector<std::pair<double, double>> dense_participation_sweep(
    const lattice::LatticeSpec& spec, std::span<const double> gamma_values,
    std::int64_t cap) {
  spec.validate();
  const std::int64_t n_sites = spec.sites();
  if (n_sites > cap)
    throw resource_error("dense_participation_sweep: N exceeds the dense cap");

  std::vector<std::pair<double, double>> result;
  result.reserve(gamma_values.size());
  const int n = lapack_int(n_sites);
  for (double gamma0 : gamma_values) {
    std::vector<double> h = build_dense(spec, gamma0, 0);
    std::vector<double> w(n_sites);
    int lwork = -1, liwork = -1, info = 0;
    double work_query = 0.0;
    int iwork_query = 0;
    dsyevd_("V", "L", &n, h.data(), &n, w.data(), &work_query, &lwork,
            &iwork_query, &liwork, &info);
    lwork = static_cast<int>(work_query);
    liwork = iwork_query;
    std::vector<double> work(lwork);
    std::vector<int> iwork(liwork);
    dsyevd_("V", "L", &n, h.data(), &n, w.data(), work.data(), &lwork,
            iwork.data(), &liwork, &info);
    if (info != 0)
      throw convergence_error("dense_participation_sweep: dsyevd failed");
    double quartic = 0.0;
    double norm_sq = 0.0;
    for (std::int64_t row = 0; row < n_sites; ++row) {
      const double a = h[row];  // first column: ground state
      norm_sq += a * a;
      quartic += a * a * a * a;
    }
    result.emplace_back(gamma0, norm_sq * norm_sq / quartic);
  }
  return result;
}

std::vector<DenseSearchEntry> dense_search_batch(
    const lattice::LatticeSpec& spec, std::span<const double> gamma_values,
    std::int64_t cap) {
  spec.validate();
  const std::int64_t n_sites = spec.sites();
  if (n_sites > cap)
    throw resource_error("dense_search_batch: N exceeds the dense cap");

  const int n = lapack_int(n_sites);
  // gamma-independent hopping part K = kappa0 I - C, tridiagonalized once;
  // the reflectors leave e_0 untouched, so the target shift stays on the
  // tridiagonal for every gamma0.
  std::vector<double> k_matrix = build_dense(spec, 1.0, /*target=*/-1);
  std::vector<double> diag(n_sites), offdiag(n_sites > 1 ? n_sites - 1 : 0),
      tau(n_sites > 1 ? n_sites - 1 : 0);
  int info = 0, lwork = -1;
  double work_query = 0.0;
  dsytrd_("L", &n, k_matrix.data(), &n, diag.data(), offdiag.data(),
          tau.data(), &work_query, &lwork, &info);
  lwork = static_cast<int>(work_query);
  {
    std::vector<double> work(lwork);
    dsytrd_("L", &n, k_matrix.data(), &n, diag.data(), offdiag.data(),
            tau.data(), work.data(), &lwork, &info);
  }
  if (info != 0)
    throw convergence_error("dense_search_batch: dsytrd failed");

  // y = Q^T s
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_sites));
  std::vector<double> y(n_sites, inv_sqrt_n);
  {
    const int one = 1;
    lwork = -1;
    dormtr_("L", "L", "T", &n, &one, k_matrix.data(), &n, tau.data(), y.data(),
            &n, &work_query, &lwork, &info);
    lwork = static_cast<int>(work_query);
    std::vector<double> work(lwork);
    dormtr_("L", "L", "T", &n, &one, k_matrix.data(), &n, tau.data(), y.data(),
            &n, work.data(), &lwork, &info);
    if (info != 0)
      throw convergence_error("dense_search_batch: dormtr failed");
  }

  std::vector<DenseSearchEntry> batch;
  batch.reserve(gamma_values.size());
  std::vector<double> z(static_cast<std::size_t>(n_sites) * n_sites);
  for (double gamma0 : gamma_values) {
    DenseSearchEntry entry;
    entry.gamma0 = gamma0;
    entry.eigenvalues.resize(n_sites);
    std::vector<double> e(n_sites > 1 ? n_sites - 1 : 0);
    for (std::int64_t i = 0; i < n_sites; ++i)
      entry.eigenvalues[i] = gamma0 * diag[i];
    entry.eigenvalues[0] -= 1.0;  // marked-site shift, on the tridiagonal
    for (std::int64_t i = 0; i + 1 < n_sites; ++i) e[i] = gamma0 * offdiag[i];

    int lw = -1, liwork = -1;
    int iwork_query = 0;
    dstedc_("I", &n, entry.eigenvalues.data(), e.data(), z.data(), &n,
            &work_query, &lw, &iwork_query, &liwork, &info);
    lw = static_cast<int>(work_query);
    liwork = iwork_query;
    std::vector<double> work(lw);
    std::vector<int> iwork(liwork);
    dstedc_("I", &n, entry.eigenvalues.data(), e.data(), z.data(), &n,
            work.data(), &lw, iwork.data(), &liwork, &info);
    if (info != 0)
      throw convergence_error("dense_search_batch: dstedc failed");

    entry.w_overlap.resize(n_sites);
    for (std::int64_t i = 0; i < n_sites; ++i)
      entry.w_overlap[i] = z[i * n_sites];  // <e_0 | u_i>
    entry.s_overlap.resize(n_sites);
    const double one = 1.0, zero = 0.0;
    const int inc = 1;
    dgemv_("T", &n, &n, &one, z.data(), &n, y.data(), &inc, &zero,
           entry.s_overlap.data(), &inc);
    batch.push_back(std::move(entry));
  }
  return batch;
}

std::complex<double> batch_amplitude(const DenseSearchEntry& entry, double t) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < entry.eigenvalues.size(); ++i) {
    const double phase = -entry.eigenvalues[i] * t;
    sum += entry.w_overlap[i] * entry.s_overlap[i] *
           std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum;
}

}  // namespace qwsearch::oracle
