// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_ERRORS_HPP
#define QWSEARCH_ERRORS_HPP

#include <stdexcept>

namespace qwsearch {

/// Requested problem size exceeds a configured cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative routine exhausted its budget before reaching tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result violated one of its postconditions.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwsearch

#endif  // QWSEARCH_ERRORS_HPP
