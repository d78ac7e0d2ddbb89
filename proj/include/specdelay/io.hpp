#ifndef SPECDELAY_IO_HPP
#define SPECDELAY_IO_HPP

#include <string>

#include "specdelay/characterization.hpp"
#include "specdelay/inverse.hpp"
#include "specdelay/potential.hpp"

namespace specdelay {

/// Round-trippable fixed formatting used for every number we write; keeps
/// repeated runs byte-identical.
std::string fmt_g17(double v);

/// Potential CSV: header `x,q_re,q_im`, one row per grid node on [0, pi].
void write_potential_csv(const std::string& path,
                         const std::vector<cplx>& q_nodes, const Grid& grid);
void write_potential_csv(const std::string& path, const PotentialPair& pot);

struct PotentialCsv {
  Grid grid;
  std::vector<cplx> q_nodes;
};

/// Reads and validates a potential CSV (uniform nodes spanning [0, pi]).
/// Throws CsvParseError with the offending 1-based line number.
PotentialCsv read_potential_csv(const std::string& path);

/// Spectrum JSON: {"delay": a, "j": 0|1, "lambdas": [[re, im], ...]},
/// numbers written with 17 significant digits.
void write_spectrum_json(const std::string& path, const Spectrum& spectrum);
Spectrum read_spectrum_json(const std::string& path);

void write_diagnostics_json(const std::string& path,
                            const InverseDiagnostics& diag);

void write_characterization_json(const std::string& path,
                                 const CharacterizationReport& report,
                                 bool char_section_present);

}  // namespace specdelay

#endif  // SPECDELAY_IO_HPP
