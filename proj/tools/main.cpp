// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/lattice.hpp"
#include "qwsearch/version.hpp"

namespace cli = qwsearch::cli;

namespace {

struct RawOptions {
  std::string dim = "1";
  std::string sizes = "64";
  std::string alphas = "1.0";
  std::string gamma = "1x";
  std::string norm = "euclidean";
  std::string oracle = "on";
  std::string max_sites;
  std::string config_path;
};

void attach_common(CLI::App* sub, cli::RunConfig* config, RawOptions* raw) {
  sub->add_option("--d", raw->dim, "lattice dimension, 1..4");
  sub->add_option("--n", raw->sizes,
                  "linear sizes: comma list or a:b:step (even, >= 4)");
  sub->add_option("--alpha", raw->alphas,
                  "tunneling exponents: comma list or a:b:step");
  sub->add_option("--gamma", raw->gamma,
                  "hopping weight: absolute value, or '<x>x' for x * gamma_c");
  sub->add_option("--norm", raw->norm, "euclidean | manhattan");
  sub->add_option("--out", config->out_path,
                  "output path (stdout when absent)");
  sub->add_option("--oracle", raw->oracle,
                  "on | off: toggle dense-oracle checks in validate");
  sub->add_option("--max-n", raw->max_sites,
                  "cap on the total number of sites N");
  sub->add_option("--config", raw->config_path,
                  "key = value file; command-line flags take precedence");
}

// "key = value" per line, '#' comments; flags that were given on the command
// line win over file entries
void apply_config_file(const CLI::App* sub, RawOptions* raw) {
  std::ifstream file(raw->config_path);
  if (!file)
    throw std::invalid_argument("cannot read config file " + raw->config_path);
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto equals = line.find('=');
    if (equals == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      const auto last = s.find_last_not_of(" \t\r");
      return first == std::string::npos ? std::string{}
                                        : s.substr(first, last - first + 1);
    };
    const std::string key = trim(line.substr(0, equals));
    const std::string value = trim(line.substr(equals + 1));
    if (key.empty() || value.empty()) continue;
    const std::string flag = "--" + key;
    if (key != "out" && sub->count(flag) > 0) continue;  // flag overrides
    if (key == "d") raw->dim = value;
    else if (key == "n") raw->sizes = value;
    else if (key == "alpha") raw->alphas = value;
    else if (key == "gamma") raw->gamma = value;
    else if (key == "norm") raw->norm = value;
    else if (key == "oracle") raw->oracle = value;
    else if (key == "max-n") raw->max_sites = value;
    else throw std::invalid_argument("unknown config key " + key);
  }
}

void finalize(const CLI::App* sub, cli::RunConfig* config, RawOptions* raw) {
  if (!raw->config_path.empty()) apply_config_file(sub, raw);
  config->dim = std::stoi(raw->dim);
  config->sizes = cli::parse_int_list(raw->sizes);
  config->alphas = cli::parse_double_list(raw->alphas);
  cli::parse_gamma(raw->gamma, config);
  if (raw->norm == "euclidean")
    config->norm = qwsearch::lattice::Norm::kEuclidean;
  else if (raw->norm == "manhattan")
    config->norm = qwsearch::lattice::Norm::kManhattan;
  else
    throw std::invalid_argument("norm must be euclidean or manhattan");
  if (raw->oracle == "on")
    config->oracle = true;
  else if (raw->oracle == "off")
    config->oracle = false;
  else
    throw std::invalid_argument("oracle must be on or off");
  if (!raw->max_sites.empty()) config->max_sites = std::stoll(raw->max_sites);
  if (const char* workers = std::getenv("QWSEARCH_WORKERS"))
    config->workers = std::max(1, std::atoi(workers));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-time quantum spatial search on power-law lattices"};
  app.set_version_flag("--version", qwsearch::kVersion);
  app.require_subcommand(1);

  cli::RunConfig config;
  RawOptions raw;

  CLI::App* gap_scan = app.add_subcommand(
      "gap-scan", "exact and asymptotic rescaled gap over an (n, alpha) grid");
  CLI::App* chi_map = app.add_subcommand(
      "chi-map", "order parameter chi over an (n, alpha) grid");
  CLI::App* fidelity = app.add_subcommand(
      "fidelity", "transfer amplitude time series for a single lattice");
  CLI::App* dos = app.add_subcommand(
      "dos", "cumulative density of states and fitted spectral dimension");
  CLI::App* phase = app.add_subcommand(
      "phase", "regime, optimality and spectral dimension per alpha");
  CLI::App* validate = app.add_subcommand(
      "validate", "oracle-equivalence and invariant checks");
  for (CLI::App* sub : {gap_scan, chi_map, fidelity, dos, phase, validate})
    attach_common(sub, &config, &raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    CLI::App* active = nullptr;
    for (CLI::App* sub : {gap_scan, chi_map, fidelity, dos, phase, validate})
      if (sub->parsed()) active = sub;
    if (active == nullptr) return cli::kExitConfig;
    finalize(active, &config, &raw);
    if (active == gap_scan) return cli::cmd_gap_scan(config);
    if (active == chi_map) return cli::cmd_chi_map(config);
    if (active == fidelity) return cli::cmd_fidelity(config);
    if (active == dos) return cli::cmd_dos(config);
    if (active == phase) return cli::cmd_phase(config);
    return cli::cmd_validate(config);
  } catch (const qwsearch::validation_error& error) {
    std::cerr << "validation error: " << error.what() << '\n';
    return cli::kExitValidation;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return cli::kExitConfig;
  }
}
