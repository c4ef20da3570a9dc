// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qwsearch/asymptotics.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/oracle.hpp"
#include "qwsearch/spectrum.hpp"
#include "qwsearch/version.hpp"

namespace qwsearch::cli {

namespace {

namespace lat = qwsearch::lattice;
namespace spc = qwsearch::spectrum;
namespace asy = qwsearch::asymptotics;
namespace orc = qwsearch::oracle;

constexpr double kPi = std::numbers::pi;

using Field = std::optional<double>;

// fixed float formatting: 17 significant digits, '.' decimal point
std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_field(const Field& field) {
  return field ? format_number(*field) : std::string{};
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

void emit(const RunConfig& config, const std::string& command,
          const CsvTable& table, const nlohmann::json& summary,
          double wall_seconds) {
  const std::string csv = table.render();
  if (config.out_path.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
    return;
  }
  {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out)
      throw std::invalid_argument("cannot open output path " +
                                  config.out_path);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  }
  nlohmann::json sidecar;
  sidecar["command"] = command;
  sidecar["config"] = {
      {"d", config.dim},
      {"n", config.sizes},
      {"alpha", config.alphas},
      {"gamma_value", config.gamma_value},
      {"gamma_is_multiple", config.gamma_is_multiple},
      {"norm", lat::to_string(config.norm)},
      {"oracle", config.oracle},
      {"max_n", config.max_sites},
      {"workers", config.workers},
  };
  sidecar["versions"] = {{"qwsearch_core", qwsearch::kVersion},
                         {"cli", qwsearch::kVersion}};
  sidecar["norm"] = lat::to_string(config.norm);
  sidecar["wall_time_seconds"] = wall_seconds;
  sidecar["summary"] = summary;
  std::ofstream meta(config.out_path + ".meta.json", std::ios::binary);
  meta << sidecar.dump(2) << '\n';
}

// bounded worker pool; rows land in a preallocated slot per index, so the
// output is independent of scheduling
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int n_threads = std::min<std::size_t>(workers, count);
  pool.reserve(n_threads);
  std::vector<std::exception_ptr> errors(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count;
             i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& thread : pool) thread.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
}

struct SweepRow {
  int dim = 0;
  int size = 0;
  std::int64_t sites = 0;
  double alpha = 0.0;
  std::string norm;
  Field gamma0, gamma_c, chi_exact, chi_asymptotic;
  Field delta_exact, big_delta_exact, big_delta_asymptotic;
  std::string regime;
  Field d_s, search_t, fidelity_at_t, apd_delta;

  std::vector<std::string> serialize() const {
    return {std::to_string(dim),
            std::to_string(size),
            std::to_string(sites),
            format_number(alpha),
            norm,
            format_field(gamma0),
            format_field(gamma_c),
            format_field(chi_exact),
            format_field(chi_asymptotic),
            format_field(delta_exact),
            format_field(big_delta_exact),
            format_field(big_delta_asymptotic),
            regime,
            format_field(d_s),
            format_field(search_t),
            format_field(fidelity_at_t),
            format_field(apd_delta)};
  }

  static std::vector<std::string> header() {
    return {"d",          "n",           "N",
            "alpha",      "norm",        "gamma0",
            "gamma_c",    "chi_exact",   "chi_asymptotic",
            "delta_exact", "Delta_exact", "Delta_asymptotic",
            "regime",     "d_s",         "T",
            "fidelity_at_T", "apd_delta"};
  }
};

double resolve_gamma(const RunConfig& config, double gamma_c) {
  return config.gamma_is_multiple ? config.gamma_value * gamma_c
                                  : config.gamma_value;
}

// shared evaluation for gap-scan and chi-map rows
SweepRow evaluate_point(const RunConfig& config, int size, double alpha) {
  const lat::LatticeSpec spec{config.dim, size, alpha, config.norm};
  const auto table = lat::build_dispersion(spec, config.max_sites);

  SweepRow row;
  row.dim = config.dim;
  row.size = size;
  row.sites = spec.sites();
  row.alpha = alpha;
  row.norm = lat::to_string(config.norm);
  const double gamma_c = spc::gamma_critical(table);
  row.gamma_c = gamma_c;
  row.gamma0 = resolve_gamma(config, gamma_c);
  row.chi_exact = spc::chi(table);
  row.chi_asymptotic = asy::chi_asymptotic(config.dim, alpha);
  row.delta_exact = lat::spectral_gap(table);
  row.big_delta_exact = lat::rescaled_gap(table);
  try {
    const auto gap = asy::gap_asymptotic(config.dim, alpha,
                                         static_cast<double>(spec.sites()));
    row.regime = asy::to_string(gap.regime.kind);
    if (gap.predicted) {
      row.big_delta_asymptotic = *gap.predicted;
      row.apd_delta =
          100.0 * std::abs((*row.big_delta_exact - *gap.predicted) /
                           *row.big_delta_exact);
    }
    if (gap.regime.kind == asy::RegimeKind::kIntermediate)
      row.d_s = asy::spectral_dimension(config.dim, alpha);
  } catch (const std::domain_error&) {
    row.regime = "boundary";
  }
  return row;
}

int run_sweep(const RunConfig& config, const std::string& command) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::pair<int, double>> grid;
  for (int size : config.sizes)
    for (double alpha : config.alphas) grid.emplace_back(size, alpha);

  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), config.workers, [&](std::size_t i) {
    rows[i] = evaluate_point(config, grid[i].first, grid[i].second);
  });

  CsvTable table;
  table.header = SweepRow::header();
  for (const auto& row : rows) table.rows.push_back(row.serialize());

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  emit(config, command, table, nlohmann::json::object(), wall);
  return kExitOk;
}

void require_single_spec(const RunConfig& config, const char* command) {
  if (config.sizes.size() != 1 || config.alphas.size() != 1)
    throw std::invalid_argument(std::string(command) +
                                ": needs exactly one n and one alpha");
}

}  // namespace

void RunConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("empty n list");
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  for (int size : sizes) lat::LatticeSpec{dim, size, alphas.front(), norm}.validate();
  for (double alpha : alphas)
    lat::LatticeSpec{dim, sizes.front(), alpha, norm}.validate();
  if (!gamma_is_multiple && !(gamma_value > 0.0))
    throw std::invalid_argument("absolute gamma must be > 0");
  if (gamma_is_multiple && !(gamma_value > 0.0))
    throw std::invalid_argument("gamma multiple must be > 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      values.push_back(std::stoi(token));
      continue;
    }
    const auto colon2 = token.find(':', colon + 1);
    if (colon2 == std::string::npos)
      throw std::invalid_argument("range needs the form a:b:step");
    const int a = std::stoi(token.substr(0, colon));
    const int b = std::stoi(token.substr(colon + 1, colon2 - colon - 1));
    const int step = std::stoi(token.substr(colon2 + 1));
    if (step <= 0 || b < a) throw std::invalid_argument("bad range " + token);
    for (int v = a; v <= b; v += step) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      values.push_back(std::stod(token));
      continue;
    }
    const auto colon2 = token.find(':', colon + 1);
    if (colon2 == std::string::npos)
      throw std::invalid_argument("range needs the form a:b:step");
    const double a = std::stod(token.substr(0, colon));
    const double b = std::stod(token.substr(colon + 1, colon2 - colon - 1));
    const double step = std::stod(token.substr(colon2 + 1));
    if (!(step > 0.0) || b < a)
      throw std::invalid_argument("bad range " + token);
    for (double v = a; v <= b + 1e-12 * step; v += step) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void parse_gamma(const std::string& text, RunConfig* config) {
  if (text.empty()) throw std::invalid_argument("empty gamma");
  if (text.back() == 'x' || text.back() == 'X') {
    config->gamma_is_multiple = true;
    config->gamma_value = std::stod(text.substr(0, text.size() - 1));
  } else {
    config->gamma_is_multiple = false;
    config->gamma_value = std::stod(text);
  }
}

int cmd_gap_scan(const RunConfig& config) { return run_sweep(config, "gap-scan"); }

int cmd_chi_map(const RunConfig& config) { return run_sweep(config, "chi-map"); }

int cmd_fidelity(const RunConfig& config) {
  config.validate();
  require_single_spec(config, "fidelity");
  const auto start = std::chrono::steady_clock::now();

  const lat::LatticeSpec spec{config.dim, config.sizes[0], config.alphas[0],
                              config.norm};
  const auto table = lat::build_dispersion(spec, config.max_sites);
  const double gamma_c = spc::gamma_critical(table);
  spc::SearchParams params{&table, resolve_gamma(config, gamma_c), 0};
  const auto spectrum = spc::solve_spectrum(params);
  const auto peak = spc::search_time(spectrum);

  const double sqrt_n = std::sqrt(static_cast<double>(spec.sites()));
  const double horizon = 2.0 * kPi * sqrt_n / spectrum.chi;

  CsvTable table_out;
  table_out.header = {"t", "re_a", "im_a", "fidelity", "two_level_fidelity"};
  for (int i = 0; i <= 400; ++i) {
    const double t = horizon * i / 400.0;
    const auto a = spc::amplitude(spectrum, t);
    const double two_level = spectrum.chi * std::sin(spectrum.chi * t / sqrt_n);
    table_out.rows.push_back({format_number(t), format_number(a.real()),
                              format_number(a.imag()),
                              format_number(std::norm(a)),
                              format_number(two_level * two_level)});
  }

  nlohmann::json summary = {{"T", peak.time},
                            {"fidelity_at_T", peak.fidelity},
                            {"gamma0", params.gamma0},
                            {"gamma_c", gamma_c},
                            {"chi", spectrum.chi}};
  if (config.out_path.empty())
    std::cerr << "# T = " << format_number(peak.time)
              << ", F(T) = " << format_number(peak.fidelity) << '\n';
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  emit(config, "fidelity", table_out, summary, wall);
  return kExitOk;
}

int cmd_dos(const RunConfig& config) {
  config.validate();
  require_single_spec(config, "dos");
  const auto start = std::chrono::steady_clock::now();

  const lat::LatticeSpec spec{config.dim, config.sizes[0], config.alphas[0],
                              config.norm};
  const auto table = lat::build_dispersion(spec, config.max_sites);
  const auto dos = lat::cumulative_dos(table);
  const double delta = lat::rescaled_gap(table);

  Field fitted;
  try {
    fitted = lat::estimate_spectral_dimension(
        dos, 5.0 * delta, std::min(0.90, 80.0 * delta));
  } catch (const std::invalid_argument&) {
    try {
      fitted = lat::estimate_spectral_dimension(
          dos, 1.5 * delta, std::min(0.95, 300.0 * delta));
    } catch (const std::invalid_argument&) {
    }
  }
  Field formula;
  std::string regime = "boundary";
  try {
    const auto classified = asy::classify(config.dim, config.alphas[0]);
    regime = asy::to_string(classified.kind);
    if (classified.kind == asy::RegimeKind::kIntermediate)
      formula = asy::spectral_dimension(config.dim, config.alphas[0]);
  } catch (const std::domain_error&) {
  }

  CsvTable out;
  out.header = {"lambda", "fraction", "ds_fitted", "ds_formula", "regime"};
  for (const auto& point : dos)
    out.rows.push_back({format_number(point.lambda),
                        format_number(point.fraction), format_field(fitted),
                        format_field(formula), regime});

  nlohmann::json summary = {{"ds_fitted", fitted ? nlohmann::json(*fitted)
                                                 : nlohmann::json()},
                            {"ds_formula", formula ? nlohmann::json(*formula)
                                                   : nlohmann::json()},
                            {"regime", regime}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  emit(config, "dos", out, summary, wall);
  return kExitOk;
}

int cmd_phase(const RunConfig& config) {
  if (config.alphas.empty()) throw std::invalid_argument("empty alpha list");
  const auto start = std::chrono::steady_clock::now();

  CsvTable out;
  out.header = {"d", "alpha", "regime", "optimal", "d_s", "note"};
  for (double alpha : config.alphas) {
    std::string regime;
    std::string optimal;
    std::string note;
    Field d_s;
    const double alpha_c = 1.5 * config.dim;
    try {
      const auto classified = asy::classify(config.dim, alpha);
      regime = asy::to_string(classified.kind);
      optimal = classified.optimal ? "optimal" : "suboptimal";
      if (classified.kind == asy::RegimeKind::kIntermediate)
        d_s = asy::spectral_dimension(config.dim, alpha);
    } catch (const std::domain_error&) {
      regime = "boundary";
      note = "regime boundary";
    }
    if (std::abs(alpha - alpha_c) < 1e-12) note = "alpha_c boundary";
    out.rows.push_back({std::to_string(config.dim), format_number(alpha),
                        regime, optimal, format_field(d_s), note});
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  emit(config, "phase", out, nlohmann::json::object(), wall);
  return kExitOk;
}

namespace {

struct Check {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

Check make_check(const std::string& name, double observed, double tolerance) {
  return {name, tolerance, observed, observed <= tolerance};
}

}  // namespace

int cmd_validate(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const bool inject_fault = []() {
    const char* fault = std::getenv("QWSEARCH_INJECT_FAULT");
    return fault != nullptr && std::string(fault) == "coupling-sign";
  }();

  std::vector<Check> checks;

  // dispersion route equivalence
  {
    double worst = 0.0;
    for (const lat::LatticeSpec& spec :
         {lat::LatticeSpec{1, 64, 2.5, config.norm},
          lat::LatticeSpec{2, 8, 1.2, config.norm},
          lat::LatticeSpec{3, 4, 3.0, config.norm}}) {
      const auto table = lat::build_dispersion(spec, config.max_sites);
      const auto brute = orc::brute_dispersion(spec);
      for (std::size_t i = 0; i < brute.size(); ++i)
        worst = std::max(worst, std::abs(table.values[i] - brute[i]) /
                                    table.kappa0);
    }
    checks.push_back(make_check("fft-vs-brute-dispersion", worst, 1e-10));
  }

  // kappa0 closed form, d = 1
  {
    const auto table =
        lat::build_dispersion({1, 100, 2.0, config.norm}, config.max_sites);
    const double closed = lat::kappa0_closed_form_d1(100, 2.0);
    checks.push_back(make_check(
        "kappa0-closed-form-d1",
        std::abs(closed - table.kappa0) / table.kappa0, 1e-12));
  }

  // removable singularity of C2 at alpha = 2, d = 1
  {
    const double at_two = asy::const_c2(1, 2.0);
    const double averaged =
        0.5 * (asy::const_c2(1, 2.0 - 1e-6) + asy::const_c2(1, 2.0 + 1e-6));
    checks.push_back(make_check("removable-singularity-c2",
                                std::abs(at_two - averaged), 1e-6));
  }

  // secular solution internals on a small grid
  {
    double worst_w = 0.0;
    double worst_a0 = 0.0;
    double worst_unitarity = 0.0;
    bool interlaced = true;
    for (const lat::LatticeSpec& spec :
         {lat::LatticeSpec{1, 64, 0.5, config.norm},
          lat::LatticeSpec{2, 8, 3.3, config.norm}}) {
      const auto table = lat::build_dispersion(spec, config.max_sites);
      spc::SearchParams params{&table, spc::gamma_critical(table), 0};
      const auto spectrum = spc::solve_spectrum(params);
      double w_total = 0.0;
      double s_total = 0.0;
      for (std::size_t i = 0; i < spectrum.roots.size(); ++i) {
        w_total += spectrum.w_sq[i];
        s_total += spectrum.s_sq[i];
        if (spectrum.roots[i] >= spectrum.poles[i].value) interlaced = false;
        if (i > 0 && spectrum.roots[i] <= spectrum.poles[i - 1].value)
          interlaced = false;
      }
      worst_w = std::max({worst_w, std::abs(w_total - 1.0),
                          std::abs(s_total - 1.0)});
      const double inv_sqrt_n =
          1.0 / std::sqrt(static_cast<double>(spec.sites()));
      worst_a0 = std::max(worst_a0, std::abs(spc::amplitude(spectrum, 0.0) -
                                             std::complex<double>(inv_sqrt_n, 0.0)));
      for (int i = 0; i <= 100; ++i) {
        const double t =
            2.0 * kPi * std::sqrt(static_cast<double>(spec.sites())) /
            spectrum.chi * i / 100.0;
        worst_unitarity = std::max(
            worst_unitarity, std::norm(spc::amplitude(spectrum, t)) - 1.0);
      }
    }
    checks.push_back(make_check("weight-completeness", worst_w, 1e-10));
    checks.push_back(make_check("a0-equals-inv-sqrt-n", worst_a0, 1e-12));
    checks.push_back(make_check("amplitude-unitarity", worst_unitarity, 1e-10));
    checks.push_back(make_check("root-pole-interlacing",
                                interlaced ? 0.0 : 1.0, 0.5));
  }

  // spectral gap is the minimum over k != 0
  {
    double worst = 0.0;
    for (const lat::LatticeSpec& spec :
         {lat::LatticeSpec{1, 64, 0.7, config.norm},
          lat::LatticeSpec{2, 16, 3.0, config.norm}}) {
      const auto table = lat::build_dispersion(spec, config.max_sites);
      const double gap = lat::spectral_gap(table);
      const auto brute = orc::brute_dispersion(spec);
      double minimum = brute[1];
      for (std::size_t i = 1; i < brute.size(); ++i)
        minimum = std::min(minimum, brute[i]);
      worst = std::max(worst, std::abs(gap - minimum) / minimum);
    }
    checks.push_back(make_check("spectral-gap-is-minimum", worst, 1e-9));
  }

  // oracle equivalence of the transfer amplitude
  if (config.oracle) {
    double worst = 0.0;
    const lat::LatticeSpec spec{1, 64, 0.5, config.norm};
    const auto table = lat::build_dispersion(spec, config.max_sites);
    const double gamma_c = spc::gamma_critical(table);
    for (double scale : {0.5, 1.0, 2.0}) {
      spc::SearchParams params{&table, scale * gamma_c, 0};
      const auto spectrum = spc::solve_spectrum(params);
      auto system = orc::dense_hamiltonian(params);
      if (inject_fault) {
        // deliberate corruption for the fault-injection path
        system.hamiltonian[1] = -system.hamiltonian[1];
        system.hamiltonian[spec.sites()] = -system.hamiltonian[spec.sites()];
      }
      orc::dense_diagonalize(system);
      const double horizon =
          2.0 * kPi * std::sqrt(static_cast<double>(spec.sites())) /
          spectrum.chi;
      for (int i = 0; i < 50; ++i) {
        const double t = horizon * i / 49.0;
        worst = std::max(worst, std::abs(spc::amplitude(spectrum, t) -
                                         orc::dense_amplitude(system, t)));
      }
    }
    checks.push_back(make_check("secular-vs-dense-amplitude", worst, 1e-9));
  }

  bool all_pass = true;
  nlohmann::json report;
  report["checks"] = nlohmann::json::array();
  for (const auto& check : checks) {
    report["checks"].push_back({{"name", check.name},
                                {"tolerance", check.tolerance},
                                {"observed", check.observed},
                                {"pass", check.pass}});
    all_pass = all_pass && check.pass;
  }
  report["pass"] = all_pass;
  report["versions"] = {{"qwsearch_core", qwsearch::kVersion}};
  report["norm"] = lat::to_string(config.norm);
  report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (config.out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    out << report.dump(2) << '\n';
  }
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace qwsearch::cli
