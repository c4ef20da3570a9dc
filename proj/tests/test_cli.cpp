// Copyright (c) 2026 The qwsearch authors
// SPDX-License-Identifier: Apache-2.0

// Binary-level tests of the command-line surface: exit codes, CSV schema,
// sidecars, determinism across worker counts, fault injection.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = QWSEARCH_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path dir = fs::temp_directory_path() / "qwsearch_cli_test";
  fs::create_directories(dir);
  const fs::path capture = dir / "stdout.txt";
  const std::string command =
      env + (env.empty() ? "" : " ") + kCli + " " + args + " > " +
      capture.string() + " 2>/dev/null";
  const int raw = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(capture);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qwsearch_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("gap-scan emits the frozen schema and succeeds") {
  const auto result = run("gap-scan --d 1 --n 8,16 --alpha 0.5,2.5");
  CHECK(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "d,n,N,alpha,norm,gamma0,gamma_c,chi_exact,chi_asymptotic,"
        "delta_exact,Delta_exact,Delta_asymptotic,regime,d_s,T,"
        "fidelity_at_T,apd_delta");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);  // n-major, alpha-minor grid
}

TEST_CASE("gap-scan rows are ordered n-major, alpha-minor") {
  const auto result = run("gap-scan --d 1 --n 16,8 --alpha 2.5,0.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::pair<int, double>> seen;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    seen.emplace_back(std::stoi(fields[1]), std::stod(fields[3]));
  }
  REQUIRE(seen.size() == 4);
  CHECK(seen[0] == std::pair<int, double>{8, 0.5});
  CHECK(seen[1] == std::pair<int, double>{8, 2.5});
  CHECK(seen[2] == std::pair<int, double>{16, 0.5});
  CHECK(seen[3] == std::pair<int, double>{16, 2.5});
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run("gap-scan --d 1 --alpha ''").exit_code == 2);
  CHECK(run("gap-scan --d 7 --n 8 --alpha 1.0").exit_code == 2);
  CHECK(run("gap-scan --d 1 --n 9 --alpha 1.0").exit_code == 2);
  CHECK(run("gap-scan --d 1 --n 8 --alpha 1.0 --norm chebyshev").exit_code ==
        2);
  CHECK(run("no-such-command").exit_code == 2);
  // cap-exceeding N is a resource error, also exit 2
  CHECK(run("gap-scan --d 1 --n 4096 --alpha 1.0 --max-n 1024").exit_code ==
        2);
}

TEST_CASE("identical configs give byte-identical CSV at any worker count") {
  const auto one = temp_file("workers1.csv");
  const auto eight = temp_file("workers8.csv");
  const std::string args =
      "gap-scan --d 1 --n 8,16,32,64 --alpha 0.5,1.5,2.5,3.5,4.5 --out ";
  CHECK(run(args + one.string(), "QWSEARCH_WORKERS=1").exit_code == 0);
  CHECK(run(args + eight.string(), "QWSEARCH_WORKERS=8").exit_code == 0);
  const std::string text_one = slurp(one);
  CHECK(!text_one.empty());
  CHECK(text_one == slurp(eight));
}

TEST_CASE("CSV outputs ship a JSON sidecar with the config echo") {
  const auto out = temp_file("sidecar.csv");
  REQUIRE(run("chi-map --d 1 --n 8 --alpha 0.5 --out " + out.string())
              .exit_code == 0);
  const std::string sidecar = slurp(fs::path(out.string() + ".meta.json"));
  CHECK(sidecar.find("\"command\": \"chi-map\"") != std::string::npos);
  CHECK(sidecar.find("\"versions\"") != std::string::npos);
  CHECK(sidecar.find("\"norm\": \"euclidean\"") != std::string::npos);
  CHECK(sidecar.find("\"wall_time_seconds\"") != std::string::npos);
}

TEST_CASE("fidelity time series starts at 1/N") {
  const auto result = run("fidelity --d 1 --n 64 --alpha 0.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header, first;
  std::getline(lines, header);
  CHECK(header == "t,re_a,im_a,fidelity,two_level_fidelity");
  std::getline(lines, first);
  const auto fields = split_csv_line(first);
  REQUIRE(fields.size() == 5);
  CHECK(std::stod(fields[0]) == 0.0);
  CHECK(std::stod(fields[3]) == doctest::Approx(1.0 / 64.0).epsilon(1e-10));
}

TEST_CASE("fidelity requires a single lattice spec") {
  CHECK(run("fidelity --d 1 --n 8,16 --alpha 0.5").exit_code == 2);
}

TEST_CASE("dos reports both spectral-dimension routes") {
  const auto result = run("dos --d 1 --n 4096 --alpha 1.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header, first;
  std::getline(lines, header);
  CHECK(header == "lambda,fraction,ds_fitted,ds_formula,regime");
  std::getline(lines, first);
  auto fields = split_csv_line(first);
  REQUIRE(fields.size() == 5);
  CHECK(std::stod(fields[3]) == doctest::Approx(4.0));  // 2d/(alpha-d)
  CHECK(fields[4] == "intermediate");
  CHECK(std::stod(fields[2]) == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("dos leaves the formula column empty outside (d, d+2)") {
  const auto result = run("dos --d 1 --n 256 --alpha 5.0");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  const auto fields = split_csv_line(first);
  REQUIRE(fields.size() == 5);
  CHECK(fields[3].empty());
  CHECK(fields[4] == "short-range");
}

TEST_CASE("phase diagram rows") {
  const auto result = run("phase --d 1 --alpha 1.4,4.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header, first, second;
  std::getline(lines, header);
  CHECK(header == "d,alpha,regime,optimal,d_s,note");
  std::getline(lines, first);
  auto fields = split_csv_line(first);
  CHECK(fields[2] == "intermediate");
  CHECK(fields[3] == "optimal");
  CHECK(std::stod(fields[4]) == doctest::Approx(5.0));
  std::getline(lines, second);
  fields = split_csv_line(second);
  CHECK(fields[2] == "short-range");
  CHECK(fields[3] == "suboptimal");

  const auto boundary = run("phase --d 3 --alpha 4.5");
  std::stringstream blines(boundary.stdout_text);
  std::string bheader, brow;
  std::getline(blines, bheader);
  std::getline(blines, brow);
  CHECK(brow.find("alpha_c boundary") != std::string::npos);
}

TEST_CASE("config file feeds defaults and flags override it") {
  const auto cfg = temp_file("run.ini");
  {
    std::ofstream out(cfg);
    out << "# sweep configuration\n";
    out << "d = 1\n";
    out << "n = 8\n";
    out << "alpha = 0.5\n";
    out << "norm = manhattan\n";
  }
  const auto from_file = run("gap-scan --config " + cfg.string());
  REQUIRE(from_file.exit_code == 0);
  CHECK(from_file.stdout_text.find("manhattan") != std::string::npos);
  CHECK(from_file.stdout_text.find("1,8,8,0.5") != std::string::npos);

  const auto overridden =
      run("gap-scan --config " + cfg.string() + " --alpha 2.5");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.stdout_text.find("0.5,manhattan") == std::string::npos);
  CHECK(overridden.stdout_text.find("2.5,manhattan") != std::string::npos);
}

TEST_CASE("gap-scan APD decreases with n in the intermediate regime") {
  const auto result =
      run("gap-scan --d 1 --n 1024,2048,4096,8192 --alpha 2.0");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string line;
  std::getline(lines, line);  // header
  double prev = 1e300;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const double apd = std::stod(fields[16]);
    CHECK(apd < prev);
    prev = apd;
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("chi-map: chi decreases with N beyond alpha_c") {
  const auto result = run("chi-map --d 1 --n 256,1024 --alpha 2.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string header, small, large;
  std::getline(lines, header);
  std::getline(lines, small);
  std::getline(lines, large);
  const double chi_small = std::stod(split_csv_line(small)[7]);
  const double chi_large = std::stod(split_csv_line(large)[7]);
  CHECK(chi_large < chi_small);
}

TEST_CASE("fidelity two-level column tracks the exact curve for alpha < d") {
  const auto result = run("fidelity --d 1 --n 4096 --alpha 0.5");
  REQUIRE(result.exit_code == 0);
  std::stringstream lines(result.stdout_text);
  std::string line;
  std::getline(lines, line);  // header
  double worst = 0.0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    worst = std::max(worst,
                     std::abs(std::stod(fields[3]) - std::stod(fields[4])));
  }
  CHECK(worst < 0.05);
}

TEST_CASE("validate passes on a sound build and exits 0") {
  const auto out = temp_file("report.json");
  const auto result = run("validate --out " + out.string());
  CHECK(result.exit_code == 0);
  const std::string report = slurp(out);
  CHECK(report.find("\"pass\": true") != std::string::npos);
  CHECK(report.find("secular-vs-dense-amplitude") != std::string::npos);
  CHECK(report.find("\"tolerance\"") != std::string::npos);
  CHECK(report.find("\"observed\"") != std::string::npos);
}

TEST_CASE("validate flags an injected coupling sign flip and exits 3") {
  const auto out = temp_file("fault.json");
  const auto result = run("validate --out " + out.string(),
                          "QWSEARCH_INJECT_FAULT=coupling-sign");
  CHECK(result.exit_code == 3);
  const std::string report = slurp(out);
  CHECK(report.find("\"pass\": false") != std::string::npos);
  CHECK(report.find("secular-vs-dense-amplitude") != std::string::npos);
}

TEST_CASE("validate with the oracle off skips the dense comparison") {
  const auto result = run("validate --oracle off");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("secular-vs-dense-amplitude") ==
        std::string::npos);
  CHECK(result.stdout_text.find("fft-vs-brute-dispersion") !=
        std::string::npos);
}
