#include <cstdio>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "specdelay/cli.hpp"

namespace {

// "--probe 1.0" or "--probe 1.0,0.25" (re[,im]).
bool parse_complex(const std::string& text, specdelay::cplx* out) {
  std::istringstream ss(text);
  double re = 0.0, im = 0.0;
  if (!(ss >> re)) return false;
  char c;
  if (ss >> c) {
    if (c != ',' || !(ss >> im)) return false;
  }
  if (ss >> std::ws, !ss.eof()) return false;
  *out = specdelay::cplx(re, im);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using specdelay::RunConfig;
  RunConfig config;
  std::string probe_text;

  CLI::App app{"Spectral solver for Sturm-Liouville problems with constant "
               "delay and frozen-argument initial data"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--a", config.a, "delay a in [pi/2, pi)");
    cmd->add_option("--grid", config.grid_m, "grid subintervals m");
    cmd->add_option("--n-eigen", config.n_eigen, "eigenvalues per spectrum");
    cmd->add_option("--tol", config.tol_root, "root-finder tolerance");
    cmd->add_option("--omega-method", config.omega_method,
                    "omega estimator: sample or ratio");
    cmd->add_flag("--fejer", config.fejer, "Fejer-smooth the Fourier sums");
    cmd->add_option("--threads", config.threads,
                    "worker threads (0 = hardware)");
    cmd->add_option("--out-dir", config.out_dir, "output directory");
    cmd->add_option("--seed", config.seed, "seed for random test potentials");
  };

  std::string potential_csv, spectrum0_path, spectrum1_path;

  CLI::App* forward = app.add_subcommand(
      "forward", "potential CSV -> two spectrum JSON files");
  add_common(forward);
  forward->add_option("potential", potential_csv, "potential CSV path")
      ->required();
  forward->add_option("--probe", probe_text,
                      "evaluate Delta_j at lambda = re[,im]");

  CLI::App* inverse = app.add_subcommand(
      "inverse", "two spectrum JSON files -> reconstructed potential CSV");
  add_common(inverse);
  inverse->add_option("spectrum0", spectrum0_path, "j=0 spectrum JSON")
      ->required();
  inverse->add_option("spectrum1", spectrum1_path, "j=1 spectrum JSON")
      ->required();

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "forward then inverse on a built-in or random potential");
  add_common(roundtrip);
  roundtrip->add_option("--potential", config.potential_name,
                        "zero|step-qplus|step-qminus|smooth|random");
  roundtrip->add_option("--max-error", config.max_error,
                        "relative L2 threshold for exit code 0");

  CLI::App* characterize = app.add_subcommand(
      "characterize", "diagnostics of the characterization conditions");
  add_common(characterize);
  characterize
      ->add_option("spectrum1", spectrum1_path, "j=1 spectrum JSON (required)")
      ->required();
  characterize->add_option("--spectrum0", spectrum0_path,
                           "j=0 spectrum JSON (enables the decay condition)");

  CLI::App* selftest =
      app.add_subcommand("selftest", "quick built-in verification battery");
  add_common(selftest);

  CLI11_PARSE(app, argc, argv);

  if (!probe_text.empty()) {
    specdelay::cplx probe;
    if (!parse_complex(probe_text, &probe)) {
      std::fprintf(stderr, "error: cannot parse --probe value '%s'\n",
                   probe_text.c_str());
      return specdelay::kExitFailure;
    }
    config.probe = probe;
  }

  if (forward->parsed()) return specdelay::cmd_forward(config, potential_csv);
  if (inverse->parsed())
    return specdelay::cmd_inverse(config, spectrum0_path, spectrum1_path);
  if (roundtrip->parsed()) return specdelay::cmd_roundtrip(config);
  if (characterize->parsed())
    return specdelay::cmd_characterize(config, spectrum0_path, spectrum1_path);
  if (selftest->parsed()) return specdelay::cmd_selftest(config);
  return specdelay::kExitFailure;
}
