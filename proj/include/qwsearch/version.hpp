// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_VERSION_HPP
#define QWSEARCH_VERSION_HPP

namespace qwsearch {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qwsearch

#endif  // QWSEARCH_VERSION_HPP
