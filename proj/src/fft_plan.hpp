// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_SRC_FFT_PLAN_HPP
#define QWSEARCH_SRC_FFT_PLAN_HPP

#include <fftw3.h>

#include <complex>
#include <mutex>

// Internal: FFTW plan creation/destruction is not thread-safe; every
// translation unit that plans must hold the one shared mutex.

namespace qwsearch::detail {

std::mutex& fftw_planner_mutex();

// d-dimensional c2c transform with uniform extent per axis
inline void run_dft(int rank, int extent, std::complex<double>* in,
                    std::complex<double>* out, int sign) {
  int dims[4] = {extent, extent, extent, extent};
  std::unique_lock<std::mutex> lock(fftw_planner_mutex());
  fftw_plan plan =
      fftw_plan_dft(rank, dims, reinterpret_cast<fftw_complex*>(in),
                    reinterpret_cast<fftw_complex*>(out), sign, FFTW_ESTIMATE);
  lock.unlock();
  fftw_execute(plan);
  lock.lock();
  fftw_destroy_plan(plan);
}

}  // namespace qwsearch::detail

#endif  // QWSEARCH_SRC_FFT_PLAN_HPP
