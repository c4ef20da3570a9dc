// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QWSEARCH_TOOLS_COMMANDS_HPP
#define QWSEARCH_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qwsearch/lattice.hpp"

namespace qwsearch::cli {

// exit codes, stable contract
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

struct RunConfig {
  int dim = 1;
  std::vector<int> sizes;        // n list
  std::vector<double> alphas;
  double gamma_value = 1.0;      // value or multiple, per gamma_is_multiple
  bool gamma_is_multiple = true; // "<x>x" form: gamma0 = x * gamma_c
  lattice::Norm norm = lattice::Norm::kEuclidean;
  std::string out_path;          // empty: stdout
  bool oracle = true;
  std::int64_t max_sites = lattice::kDefaultSiteCap;
  int workers = 1;

  void validate() const;  // throws std::invalid_argument
};

// "4,8,16" or "4:16:4" (inclusive arithmetic range)
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// "0.25" (absolute) or "1.5x" (multiple of gamma_c)
void parse_gamma(const std::string& text, RunConfig* config);

int cmd_gap_scan(const RunConfig& config);
int cmd_chi_map(const RunConfig& config);
int cmd_fidelity(const RunConfig& config);
int cmd_dos(const RunConfig& config);
int cmd_phase(const RunConfig& config);
int cmd_validate(const RunConfig& config);

}  // namespace qwsearch::cli

#endif  // QWSEARCH_TOOLS_COMMANDS_HPP
