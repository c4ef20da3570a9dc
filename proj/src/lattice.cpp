// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "qwsearch/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "fft_plan.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/specfun.hpp"

namespace qwsearch::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

}  // namespace qwsearch::detail

namespace qwsearch::lattice {

namespace {

double norm_power(const LatticeSpec& spec, std::span<const int> j) {
  if (spec.norm == Norm::kManhattan) {
    int l1 = 0;
    for (int c : j) l1 += std::abs(c);
    return std::pow(static_cast<double>(l1), -spec.alpha);
  }
  std::int64_t l2sq = 0;
  for (int c : j) l2sq += static_cast<std::int64_t>(c) * c;
  return std::pow(static_cast<double>(l2sq), -0.5 * spec.alpha);
}

std::int64_t kmax_index(const LatticeSpec& spec) {
  std::int64_t idx = 0;
  for (int axis = 0; axis < spec.dim; ++axis) idx = idx * spec.size + spec.size / 2;
  return idx;
}

std::int64_t k1_index(const LatticeSpec& spec) {
  std::int64_t idx = 1;
  for (int axis = 1; axis < spec.dim; ++axis) idx *= spec.size;
  return idx;
}

}  // namespace

std::string to_string(Norm norm) {
  return norm == Norm::kEuclidean ? "euclidean" : "manhattan";
}

std::int64_t LatticeSpec::sites() const {
  std::int64_t n_sites = 1;
  for (int axis = 0; axis < dim; ++axis) n_sites *= size;
  return n_sites;
}

void LatticeSpec::validate() const {
  if (dim < 1 || dim > 4)
    throw std::invalid_argument("LatticeSpec: dim must be in {1,2,3,4}");
  if (size < 4 || size % 2 != 0)
    throw std::invalid_argument("LatticeSpec: size must be even and >= 4");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("LatticeSpec: alpha must be finite and >= 0");
}

double coupling(const LatticeSpec& spec, std::span<const int> displacement) {
  spec.validate();
  if (displacement.size() != static_cast<std::size_t>(spec.dim))
    throw std::invalid_argument("coupling: displacement rank mismatch");
  bool all_zero = true;
  for (int c : displacement) {
    if (c < -spec.size / 2 + 1 || c > spec.size / 2)
      throw std::invalid_argument("coupling: component outside the window");
    if (c != 0) all_zero = false;
  }
  if (all_zero) throw std::invalid_argument("coupling: zero displacement");
  return norm_power(spec, displacement);
}

DispersionTable build_dispersion(const LatticeSpec& spec,
                                 std::int64_t site_cap) {
  spec.validate();
  const std::int64_t n_sites = spec.sites();
  if (n_sites > site_cap)
    throw resource_error("build_dispersion: N = " + std::to_string(n_sites) +
                         " exceeds the cap " + std::to_string(site_cap));

  const int n = spec.size;
  std::vector<std::complex<double>> in(n_sites);
  std::vector<std::complex<double>> out(n_sites);

  // Coupling array over the grid; grid coordinate m maps to displacement
  // j = m for m <= n/2 and j = m - n otherwise.
  double kappa0 = 0.0;
  double comp = 0.0;
  int j[4] = {0, 0, 0, 0};
  for (std::int64_t idx = 0; idx < n_sites; ++idx) {
    std::int64_t rest = idx;
    bool zero = true;
    for (int axis = spec.dim - 1; axis >= 0; --axis) {
      const int m = static_cast<int>(rest % n);
      rest /= n;
      j[axis] = (m <= n / 2) ? m : m - n;
      if (j[axis] != 0) zero = false;
    }
    if (zero) continue;
    const double c = norm_power(spec, std::span<const int>(j, spec.dim));
    in[idx] = c;
    const double term = c - comp;
    const double next = kappa0 + term;
    comp = (next - kappa0) - term;
    kappa0 = next;
  }

  detail::run_dft(spec.dim, n, in.data(), out.data(), FFTW_FORWARD);

  DispersionTable table;
  table.spec = spec;
  table.kappa0 = kappa0;
  table.values.resize(n_sites);
  const double negative_floor = -1e-12 * kappa0;
  for (std::int64_t idx = 0; idx < n_sites; ++idx) {
    double eps = kappa0 - out[idx].real();
    if (eps < 0.0) {
      if (eps < negative_floor)
        throw validation_error("build_dispersion: eps(k) < -1e-12 kappa0");
      eps = 0.0;
    }
    table.values[idx] = eps;
  }
  table.values[0] = 0.0;

  // enforce eps(k) = eps(-k) exactly (the FFT leaves rounding-level asymmetry)
  for (std::int64_t idx = 0; idx < n_sites; ++idx) {
    std::int64_t rest = idx;
    std::int64_t reflected = 0;
    std::int64_t stride = 1;
    for (int axis = spec.dim - 1; axis >= 0; --axis) {
      const int m = static_cast<int>(rest % n);
      rest /= n;
      reflected += static_cast<std::int64_t>((n - m) % n) * stride;
      stride *= n;
    }
    if (reflected > idx) {
      const double mean = 0.5 * (table.values[idx] + table.values[reflected]);
      table.values[idx] = mean;
      table.values[reflected] = mean;
    }
  }
  table.eps_kmax = table.values[kmax_index(spec)];

  std::vector<double> sorted(table.values);
  std::sort(sorted.begin(), sorted.end());
  const double tol = table.grouping_tolerance();
  for (double v : sorted) {
    if (!table.distinct.empty() && v - table.distinct.back().value <= tol) {
      DistinctLevel& level = table.distinct.back();
      // running mean keeps the representative centered in the group
      level.value += (v - level.value) / (level.multiplicity + 1);
      level.multiplicity += 1;
    } else {
      table.distinct.push_back({v, 1});
    }
  }
  return table;
}

double kappa0_closed_form_d1(int n, double alpha) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("kappa0_closed_form_d1: n must be even, >= 4");
  if (alpha == 1.0)
    throw std::domain_error("kappa0_closed_form_d1: pole at alpha = 1");
  return 2.0 * specfun::generalized_harmonic(n / 2, alpha) -
         std::pow(2.0, alpha) * std::pow(static_cast<double>(n), -alpha);
}

double spectral_gap(const DispersionTable& table) {
  const double gap = table.values[k1_index(table.spec)];
  if (table.distinct.size() < 2)
    throw validation_error("spectral_gap: degenerate spectrum");
  const double minimum = table.distinct[1].value;
  if (std::abs(gap - minimum) > table.grouping_tolerance())
    throw validation_error(
        "spectral_gap: eps(k_1) is not the minimum over k != 0");
  return gap;
}

double rescaled_gap(const DispersionTable& table) {
  const double delta = spectral_gap(table) / table.eps_kmax;
  if (!(delta > 0.0) || delta > 1.0 + 1e-9)
    throw validation_error("rescaled_gap: Delta outside (0, 1]");
  return std::min(delta, 1.0);
}

std::vector<DosPoint> cumulative_dos(const DispersionTable& table) {
  std::vector<DosPoint> dos;
  dos.reserve(table.distinct.size());
  const double n_sites = static_cast<double>(table.spec.sites());
  std::int64_t cumulative = 0;
  for (const DistinctLevel& level : table.distinct) {
    cumulative += level.multiplicity;
    dos.push_back({level.value / table.eps_kmax, cumulative / n_sites});
  }
  return dos;
}

double estimate_spectral_dimension(std::span<const DosPoint> dos,
                                   double lambda_lo, double lambda_hi) {
  if (!(lambda_lo > 0.0) || !(lambda_hi < 1.0) || lambda_lo >= lambda_hi)
    throw std::invalid_argument(
        "estimate_spectral_dimension: window must satisfy 0 < lo < hi < 1");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::int64_t count = 0;
  for (const DosPoint& point : dos) {
    if (point.lambda <= lambda_lo || point.lambda >= lambda_hi) continue;
    const double x = std::log(point.lambda);
    const double y = std::log(point.fraction);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 10)
    throw std::invalid_argument(
        "estimate_spectral_dimension: fewer than 10 points in the window");
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  return 2.0 * slope;
}

}  // namespace qwsearch::lattice
