#ifndef SPECDELAY_CLI_HPP
#define SPECDELAY_CLI_HPP

#include <optional>
#include <string>

#include "specdelay/types.hpp"

namespace specdelay {

/// Exit codes shared by the subcommands.
enum ExitCode {
  kExitOk = 0,
  kExitFailure = 1,       // generic error, or roundtrip above threshold
  kExitBadCsv = 2,        // malformed potential CSV
  kExitDelayMismatch = 3, // spectrum files disagree on the delay
  kExitBadDelay = 4,      // delay outside [pi/2, pi)
};

struct RunConfig {
  double a = kPi / 2.0;
  int grid_m = 512;
  int n_eigen = 128;
  double tol_root = 1e-10;
  std::string omega_method = "sample";  // or "ratio"
  bool fejer = false;
  unsigned seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  std::string out_dir = ".";
  std::optional<cplx> probe;
  std::string potential_name = "smooth";  // roundtrip built-in
  double max_error = 0.05;                // roundtrip pass threshold
};

/// Validates invariants (delay range, grid_m >= 4 n_eigen, method name).
void validate_config(const RunConfig& config);

/// forward: potential CSV -> spectrum_j0.json, spectrum_j1.json + summary.
int cmd_forward(const RunConfig& config, const std::string& potential_csv);

/// inverse: two spectrum JSONs -> q_reconstructed.csv + diagnostics.json.
int cmd_inverse(const RunConfig& config, const std::string& spectrum0_path,
                const std::string& spectrum1_path);

/// roundtrip: built-in or seeded random potential -> forward -> inverse ->
/// error report. Exit 0 iff the relative L2 error is below max_error.
int cmd_roundtrip(const RunConfig& config);

/// characterize: spectrum JSON(s) -> characterization.json. spectrum0 may
/// be empty; the decay condition is then skipped.
int cmd_characterize(const RunConfig& config,
                     const std::string& spectrum0_path,
                     const std::string& spectrum1_path);

/// selftest: quick built-in battery; exit 0 on success.
int cmd_selftest(const RunConfig& config);

}  // namespace specdelay

#endif  // SPECDELAY_CLI_HPP
