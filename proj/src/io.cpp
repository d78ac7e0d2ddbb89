#include "specdelay/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specdelay {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string pair_json(cplx z) {
  return "[" + fmt_g17(z.real()) + ", " + fmt_g17(z.imag()) + "]";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_potential_csv(const std::string& path,
                         const std::vector<cplx>& q_nodes, const Grid& grid) {
  if (static_cast<int>(q_nodes.size()) != grid.size())
    throw DomainError("write_potential_csv: node count mismatch");
  std::ofstream out = open_out(path);
  out << "x,q_re,q_im\n";
  for (int k = 0; k <= grid.m(); ++k)
    out << fmt_g17(grid.node(k)) << ',' << fmt_g17(q_nodes[k].real()) << ','
        << fmt_g17(q_nodes[k].imag()) << '\n';
}

void write_potential_csv(const std::string& path, const PotentialPair& pot) {
  write_potential_csv(path, pot.to_nodes(), pot.grid());
}

PotentialCsv read_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw CsvParseError(1, path + ": empty file");
  ++lineno;
  if (line != "x,q_re,q_im" && line != "x,q_re,q_im\r")
    throw CsvParseError(lineno, path + ": expected header x,q_re,q_im");

  std::vector<double> xs;
  std::vector<cplx> qs;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x, re, im;
    char c1, c2;
    if (!(ss >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' ||
        (ss >> std::ws, !ss.eof()))
      throw CsvParseError(lineno, path + ": malformed row at line " +
                                      std::to_string(lineno));
    if (!std::isfinite(x) || !std::isfinite(re) || !std::isfinite(im))
      throw CsvParseError(lineno, path + ": non-finite value at line " +
                                      std::to_string(lineno));
    xs.push_back(x);
    qs.push_back(cplx(re, im));
  }
  int m = static_cast<int>(xs.size()) - 1;
  if (m < 16)
    throw CsvParseError(lineno, path + ": needs at least 17 node rows");
  Grid grid(m);
  for (int k = 0; k <= m; ++k)
    if (std::abs(xs[k] - grid.node(k)) > 1e-9)
      throw CsvParseError(k + 2, path + ": node " + std::to_string(k) +
                                     " is not on the uniform grid (line " +
                                     std::to_string(k + 2) + ")");
  return PotentialCsv{grid, std::move(qs)};
}

void write_spectrum_json(const std::string& path, const Spectrum& spectrum) {
  std::ofstream out = open_out(path);
  out << "{\n  \"delay\": " << fmt_g17(spectrum.delay)
      << ",\n  \"j\": " << spectrum.j << ",\n  \"lambdas\": [";
  for (int n = 0; n < spectrum.size(); ++n) {
    if (n) out << ", ";
    out << pair_json(spectrum.lambdas[n]);
  }
  out << "]\n}\n";
}

Spectrum read_spectrum_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": invalid JSON: " + e.what());
  }
  Spectrum s;
  try {
    s.delay = doc.at("delay").get<double>();
    s.j = doc.at("j").get<int>();
    for (const auto& entry : doc.at("lambdas"))
      s.lambdas.emplace_back(entry.at(0).get<double>(),
                             entry.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": spectrum schema mismatch: " + e.what());
  }
  if (s.j != 0 && s.j != 1) throw Error(path + ": j must be 0 or 1");
  return s;
}

void write_diagnostics_json(const std::string& path,
                            const InverseDiagnostics& diag) {
  std::ofstream out = open_out(path);
  out << "{\n  \"omega\": " << pair_json(diag.omega)
      << ",\n  \"omega_alt\": " << pair_json(diag.omega_alt)
      << ",\n  \"qminus_consistency\": " << fmt_g17(diag.qminus_consistency)
      << ",\n  \"volterra_residual\": " << fmt_g17(diag.volterra_residual)
      << "\n}\n";
}

void write_characterization_json(const std::string& path,
                                 const CharacterizationReport& report,
                                 bool char_section_present) {
  std::ofstream out = open_out(path);
  out << "{\n  \"omega_fit\": " << pair_json(report.omega_fit)
      << ",\n  \"kappa_residuals\": [";
  for (size_t i = 0; i < report.kappa_residuals.size(); ++i) {
    if (i) out << ", ";
    out << pair_json(report.kappa_residuals[i]);
  }
  out << "],\n  \"kappa_stabilized\": "
      << (report.kappa_stabilized ? "true" : "false")
      << ",\n  \"a4_residual\": " << pair_json(report.a4_residual)
      << ",\n  \"exp_type_estimates\": [" << fmt_g17(report.exp_type0) << ", "
      << fmt_g17(report.exp_type1) << "]";
  if (char_section_present) {
    out << ",\n  \"char_decay\": [";
    for (size_t i = 0; i < report.char_decay.size(); ++i) {
      if (i) out << ", ";
      out << fmt_g17(report.char_decay[i]);
    }
    out << "],\n  \"char_decreasing\": "
        << (report.char_decreasing ? "true" : "false");
  } else {
    out << ",\n  \"char_decay\": \"skipped\"";
  }
  out << ",\n  \"r_samples\": [";
  for (size_t i = 0; i < report.r_samples.size(); ++i) {
    if (i) out << ", ";
    out << fmt_g17(report.r_samples[i]);
  }
  out << "]\n}\n";
}

}  // namespace specdelay
