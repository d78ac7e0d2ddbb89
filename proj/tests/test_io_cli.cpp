#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "specdelay/char_fn.hpp"
#include "specdelay/cli.hpp"
#include "specdelay/io.hpp"

using namespace specdelay;
namespace fs = std::filesystem;

namespace {

fs::path sandbox(const std::string& name) {
  fs::path dir = fs::path("io_cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("fmt_g17 round-trips doubles exactly") {
  for (double v : {0.1, kPi, 1.0 / 3.0, -2.5e-17, 6.02e23}) {
    CHECK(std::stod(fmt_g17(v)) == v);
  }
}

TEST_CASE("potential CSV round-trip is bit-exact") {
  fs::path dir = sandbox("csv_roundtrip");
  Grid grid(64);
  PotentialPair pot = random_potential(3, Delay(0.6 * kPi), grid);
  std::string path = (dir / "q.csv").string();
  write_potential_csv(path, pot);
  PotentialCsv in = read_potential_csv(path);
  CHECK(in.grid.m() == 64);
  std::vector<cplx> expect = pot.to_nodes();
  for (int k = 0; k <= 64; ++k) CHECK(in.q_nodes[k] == expect[k]);
}

TEST_CASE("malformed potential CSV reports the offending line") {
  fs::path dir = sandbox("csv_bad");
  {
    std::ofstream out(dir / "bad.csv");
    out << "x,q_re,q_im\n";
    Grid grid(16);
    for (int k = 0; k <= 10; ++k)
      out << fmt_g17(grid.node(k)) << ",0,0\n";
    out << "oops,not,numeric\n";
  }
  try {
    read_potential_csv((dir / "bad.csv").string());
    FAIL("expected CsvParseError");
  } catch (const CsvParseError& e) {
    CHECK(e.line() == 13);  // header + 11 good rows + 1 bad
  }

  {
    std::ofstream out(dir / "hdr.csv");
    out << "x,q\n0,0\n";
  }
  CHECK_THROWS_AS(read_potential_csv((dir / "hdr.csv").string()),
                  CsvParseError);
}

TEST_CASE("spectrum JSON round-trip") {
  fs::path dir = sandbox("json_roundtrip");
  Spectrum s;
  s.j = 1;
  s.delay = 0.6 * kPi;
  s.lambdas = {cplx(0.592, -0.449), cplx(1.01, 0.0), cplx(4.0, 1e-17)};
  std::string path = (dir / "s.json").string();
  write_spectrum_json(path, s);
  Spectrum r = read_spectrum_json(path);
  CHECK(r.j == 1);
  CHECK(r.delay == s.delay);
  REQUIRE(r.lambdas.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(r.lambdas[i] == s.lambdas[i]);
}

TEST_CASE("cmd_forward: zero potential writes the free spectra") {
  fs::path dir = sandbox("forward_zero");
  Grid grid(128);
  PotentialPair zero = builtin_potential("zero", grid);
  std::string csv = (dir / "zero.csv").string();
  write_potential_csv(csv, zero);

  RunConfig config;
  config.a = kPi / 2.0;
  config.grid_m = 128;
  config.n_eigen = 16;
  config.out_dir = (dir / "out").string();
  CHECK(cmd_forward(config, csv) == kExitOk);
  Spectrum s0 = read_spectrum_json((dir / "out" / "spectrum_j0.json").string());
  Spectrum s1 = read_spectrum_json((dir / "out" / "spectrum_j1.json").string());
  CHECK(s0.size() == 16);
  for (int n = 0; n < 16; ++n) {
    CHECK(std::abs(s0.lambdas[n] - cplx((n + 0.5) * (n + 0.5))) < 1e-8);
    CHECK(std::abs(s1.lambdas[n] - cplx(double(n) * n)) < 1e-8);
  }
}

TEST_CASE("cmd_forward: malformed CSV exits with code 2") {
  fs::path dir = sandbox("forward_bad");
  {
    std::ofstream out(dir / "bad.csv");
    out << "x,q_re,q_im\n0,0,whoops\n";
  }
  RunConfig config;
  config.out_dir = (dir / "out").string();
  CHECK(cmd_forward(config, (dir / "bad.csv").string()) == kExitBadCsv);
}

TEST_CASE("cmd_inverse: delay mismatch and low delay exit codes") {
  fs::path dir = sandbox("inverse_errors");
  Spectrum s0, s1;
  s0.j = 0;
  s0.delay = kPi / 2.0;
  s1.j = 1;
  s1.delay = 0.6 * kPi;  // mismatch
  for (int n = 0; n < 32; ++n) {
    s0.lambdas.push_back(cplx((n + 0.5) * (n + 0.5)));
    s1.lambdas.push_back(cplx(double(n) * n));
  }
  write_spectrum_json((dir / "s0.json").string(), s0);
  write_spectrum_json((dir / "s1.json").string(), s1);
  RunConfig config;
  config.grid_m = 128;
  config.out_dir = (dir / "out").string();
  CHECK(cmd_inverse(config, (dir / "s0.json").string(),
                    (dir / "s1.json").string()) == kExitDelayMismatch);

  s1.delay = 0.3 * kPi;  // below pi/2
  s0.delay = 0.3 * kPi;
  write_spectrum_json((dir / "s0.json").string(), s0);
  write_spectrum_json((dir / "s1.json").string(), s1);
  CHECK(cmd_inverse(config, (dir / "s0.json").string(),
                    (dir / "s1.json").string()) == kExitBadDelay);
}

TEST_CASE("cmd_inverse: trivial spectra reconstruct the zero potential") {
  fs::path dir = sandbox("inverse_zero");
  Spectrum s0, s1;
  s0.j = 0;
  s1.j = 1;
  s0.delay = s1.delay = kPi / 2.0;
  for (int n = 0; n < 32; ++n) {
    s0.lambdas.push_back(cplx((n + 0.5) * (n + 0.5)));
    s1.lambdas.push_back(cplx(double(n) * n));
  }
  write_spectrum_json((dir / "s0.json").string(), s0);
  write_spectrum_json((dir / "s1.json").string(), s1);
  RunConfig config;
  config.grid_m = 128;
  config.out_dir = (dir / "out").string();
  CHECK(cmd_inverse(config, (dir / "s0.json").string(),
                    (dir / "s1.json").string()) == kExitOk);
  PotentialCsv q =
      read_potential_csv((dir / "out" / "q_reconstructed.csv").string());
  for (const cplx& v : q.q_nodes) CHECK(std::abs(v) < 1e-9);
  std::string diag = slurp(dir / "out" / "diagnostics.json");
  CHECK(diag.find("\"omega\"") != std::string::npos);
  CHECK(diag.find("\"volterra_residual\"") != std::string::npos);
}

TEST_CASE("cmd_roundtrip: zero built-in is exact and deterministic") {
  fs::path dir = sandbox("roundtrip_zero");
  RunConfig config;
  config.grid_m = 256;
  config.n_eigen = 32;
  config.potential_name = "zero";
  config.out_dir = (dir / "a").string();
  CHECK(cmd_roundtrip(config) == kExitOk);
  config.out_dir = (dir / "b").string();
  CHECK(cmd_roundtrip(config) == kExitOk);
  for (const char* f : {"spectrum_j0.json", "spectrum_j1.json",
                        "q_original.csv", "q_reconstructed.csv",
                        "diagnostics.json", "roundtrip_report.txt"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  // The forward spectra carry root-finder rounding, so the reconstructed
  // potential is zero only to solver tolerance.
  std::string report = slurp(dir / "a" / "roundtrip_report.txt");
  auto pos = report.find("relative_l2_error=");
  REQUIRE(pos != std::string::npos);
  double err = std::stod(report.substr(pos + 18));
  CHECK(err < 1e-9);
}

TEST_CASE("cmd_characterize: single-spectrum run skips the decay section") {
  fs::path dir = sandbox("characterize_solo");
  Grid grid(256);
  Spectrum s1 = compute_spectrum(
      1, build_w_functions(builtin_potential("step-qplus", grid)), 48);
  write_spectrum_json((dir / "s1.json").string(), s1);
  RunConfig config;
  config.out_dir = (dir / "out").string();
  CHECK(cmd_characterize(config, "", (dir / "s1.json").string()) == kExitOk);
  std::string rep = slurp(dir / "out" / "characterization.json");
  CHECK(rep.find("\"char_decay\": \"skipped\"") != std::string::npos);
  CHECK(rep.find("\"omega_fit\"") != std::string::npos);
}

TEST_CASE("validate_config enforces the grid coupling") {
  RunConfig config;
  config.grid_m = 100;
  config.n_eigen = 128;
  CHECK_THROWS_AS(validate_config(config), DomainError);
  config.grid_m = 512;
  config.omega_method = "nonsense";
  CHECK_THROWS_AS(validate_config(config), DomainError);
  config.omega_method = "ratio";
  CHECK_NOTHROW(validate_config(config));
  config.a = 0.4 * kPi;
  CHECK_THROWS_AS(validate_config(config), DelayDomainError);
}
