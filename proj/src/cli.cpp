#include "specdelay/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "specdelay/char_fn.hpp"
#include "specdelay/io.hpp"
#include "specdelay/log.hpp"

namespace specdelay {

namespace {

int hardware_threads(const RunConfig& config) {
  if (config.threads > 0) return config.threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string fmt_cplx(cplx z) {
  std::string out = fmt_g17(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
  out += fmt_g17(z.imag()) + "i";
  return out;
}

void ensure_out_dir(const RunConfig& config) {
  std::filesystem::create_directories(config.out_dir);
}

InverseOptions inverse_options(const RunConfig& config) {
  InverseOptions opt;
  opt.omega_method = (config.omega_method == "ratio") ? OmegaMethod::ratio
                                                      : OmegaMethod::sample;
  opt.fejer = config.fejer;
  return opt;
}

SpectrumOptions spectrum_options(const RunConfig& config) {
  SpectrumOptions opt;
  opt.tol_root = config.tol_root;
  opt.threads = hardware_threads(config);
  return opt;
}

struct ForwardOutput {
  Spectrum s0, s1;
};

ForwardOutput forward_spectra(const RunConfig& config,
                              const PotentialPair& pot) {
  CharFnModel model = build_w_functions(pot);
  SpectrumOptions opt = spectrum_options(config);
  ForwardOutput out;
  out.s0 = compute_spectrum(0, model, config.n_eigen, opt);
  out.s1 = compute_spectrum(1, model, config.n_eigen, opt);
  return out;
}

void print_spectrum_table(const Spectrum& s, const CharFnModel& model) {
  CharFnEvaluator ev(model);
  std::printf("# spectrum j=%d (n, Re lambda, Im lambda, |Delta_%d| residual)\n",
              s.j, s.j);
  for (int n = 0; n < s.size(); ++n) {
    double res = std::abs(ev.eval(s.j, s.lambdas[n]));
    std::printf("%4d  %s  %s  %s\n", n, fmt_g17(s.lambdas[n].real()).c_str(),
                fmt_g17(s.lambdas[n].imag()).c_str(), fmt_g17(res).c_str());
  }
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CsvParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadCsv;
  } catch (const DelayMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDelayMismatch;
  } catch (const DelayDomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadDelay;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}

}  // namespace

void validate_config(const RunConfig& config) {
  Delay probe(config.a);  // throws DelayDomainError outside [pi/2, pi)
  (void)probe;
  if (config.grid_m < 4 * config.n_eigen)
    throw DomainError("config: grid_m must be >= 4 * n_eigen");
  if (config.n_eigen < 8) throw DomainError("config: n_eigen must be >= 8");
  if (config.omega_method != "sample" && config.omega_method != "ratio")
    throw DomainError("config: omega-method must be sample or ratio");
}

int cmd_forward(const RunConfig& config, const std::string& potential_csv) {
  return run_guarded([&]() {
    validate_config(config);
    ensure_out_dir(config);
    PotentialCsv in = read_potential_csv(potential_csv);
    PotentialPair pot = split_potential(in.q_nodes, Delay(config.a), in.grid);
    if (pot.snap_distance() > 0.0)
      log_info("forward: delay snapped by " + fmt_g17(pot.snap_distance()));

    CharFnModel model = build_w_functions(pot);
    if (config.probe) {
      CharFnEvaluator ev(model);
      std::printf("Delta_0(%s) = %s\n", fmt_cplx(*config.probe).c_str(),
                  fmt_cplx(ev.eval(0, *config.probe)).c_str());
      std::printf("Delta_1(%s) = %s\n", fmt_cplx(*config.probe).c_str(),
                  fmt_cplx(ev.eval(1, *config.probe)).c_str());
    }
    SpectrumOptions opt = spectrum_options(config);
    Spectrum s0 = compute_spectrum(0, model, config.n_eigen, opt);
    Spectrum s1 = compute_spectrum(1, model, config.n_eigen, opt);
    write_spectrum_json(join(config.out_dir, "spectrum_j0.json"), s0);
    write_spectrum_json(join(config.out_dir, "spectrum_j1.json"), s1);
    print_spectrum_table(s0, model);
    print_spectrum_table(s1, model);
    return kExitOk;
  });
}

int cmd_inverse(const RunConfig& config, const std::string& spectrum0_path,
                const std::string& spectrum1_path) {
  return run_guarded([&]() {
    ensure_out_dir(config);
    Spectrum s0 = read_spectrum_json(spectrum0_path);
    Spectrum s1 = read_spectrum_json(spectrum1_path);
    if (std::abs(s0.delay - s1.delay) > 1e-12)
      throw DelayMismatch("spectrum files carry different delays: " +
                          fmt_g17(s0.delay) + " vs " + fmt_g17(s1.delay));
    Delay a(s0.delay);  // DelayDomainError (exit 4) when a < pi/2
    Grid grid(config.grid_m);

    InverseResult res = run_algorithm1(s0, s1, a, grid,
                                       inverse_options(config));
    write_potential_csv(join(config.out_dir, "q_reconstructed.csv"), res.q);
    write_diagnostics_json(join(config.out_dir, "diagnostics.json"),
                           res.diagnostics);
    std::printf("omega = %s (alt %s)\n",
                fmt_cplx(res.diagnostics.omega).c_str(),
                fmt_cplx(res.diagnostics.omega_alt).c_str());
    std::printf("qminus consistency = %s\n",
                fmt_g17(res.diagnostics.qminus_consistency).c_str());
    std::printf("volterra residual = %s\n",
                fmt_g17(res.diagnostics.volterra_residual).c_str());
    return kExitOk;
  });
}

int cmd_roundtrip(const RunConfig& config) {
  return run_guarded([&]() {
    validate_config(config);
    ensure_out_dir(config);
    Grid grid(config.grid_m);
    PotentialPair pot =
        config.potential_name == "random"
            ? random_potential(config.seed, Delay(config.a), grid)
            : builtin_potential(config.potential_name, grid);

    ForwardOutput fw = forward_spectra(config, pot);
    write_spectrum_json(join(config.out_dir, "spectrum_j0.json"), fw.s0);
    write_spectrum_json(join(config.out_dir, "spectrum_j1.json"), fw.s1);
    write_potential_csv(join(config.out_dir, "q_original.csv"), pot);

    InverseResult res = run_algorithm1(fw.s0, fw.s1, pot.delay(), grid,
                                       inverse_options(config));
    write_potential_csv(join(config.out_dir, "q_reconstructed.csv"), res.q);
    write_diagnostics_json(join(config.out_dir, "diagnostics.json"),
                           res.diagnostics);

    double err = relative_l2_error(res.q, pot);
    std::printf("potential: %s  (N=%d, m=%d)\n",
                config.potential_name.c_str(), config.n_eigen, config.grid_m);
    std::printf("relative L2 reconstruction error = %s\n",
                fmt_g17(err).c_str());
    std::printf("omega = %s (alt %s)\n",
                fmt_cplx(res.diagnostics.omega).c_str(),
                fmt_cplx(res.diagnostics.omega_alt).c_str());
    std::printf("qminus consistency = %s\n",
                fmt_g17(res.diagnostics.qminus_consistency).c_str());
    std::printf("volterra residual = %s\n",
                fmt_g17(res.diagnostics.volterra_residual).c_str());

    std::ofstream report(join(config.out_dir, "roundtrip_report.txt"),
                         std::ios::binary);
    report << "potential=" << config.potential_name << "\n"
           << "n_eigen=" << config.n_eigen << "\n"
           << "grid_m=" << config.grid_m << "\n"
           << "relative_l2_error=" << fmt_g17(err) << "\n";
    return err <= config.max_error ? kExitOk : kExitFailure;
  });
}

int cmd_characterize(const RunConfig& config,
                     const std::string& spectrum0_path,
                     const std::string& spectrum1_path) {
  return run_guarded([&]() {
    ensure_out_dir(config);
    std::optional<Spectrum> s0;
    if (!spectrum0_path.empty()) s0 = read_spectrum_json(spectrum0_path);
    Spectrum s1 = read_spectrum_json(spectrum1_path);
    if (s0 && std::abs(s0->delay - s1.delay) > 1e-12)
      throw DelayMismatch("spectrum files carry different delays");
    Delay a(s1.delay);

    CharacterizationReport rep = characterize(s0, s1, a);
    write_characterization_json(join(config.out_dir, "characterization.json"),
                                rep, s0.has_value());
    std::printf("omega_fit = %s\n", fmt_cplx(rep.omega_fit).c_str());
    std::printf("kappa stabilized: %s\n", rep.kappa_stabilized ? "yes" : "no");
    std::printf("A4 residual = %s\n", fmt_cplx(rep.a4_residual).c_str());
    if (s0) {
      std::printf("char decay trend: %s\n",
                  rep.char_decreasing ? "decreasing" : "NOT decreasing");
      std::printf("exp types: theta0 %s, theta1 %s (pi - a = %s)\n",
                  fmt_g17(rep.exp_type0).c_str(),
                  fmt_g17(rep.exp_type1).c_str(),
                  fmt_g17(kPi - a.value()).c_str());
    } else {
      std::printf("char decay: skipped (single spectrum)\n");
    }
    return kExitOk;
  });
}

int cmd_selftest(const RunConfig& config) {
  return run_guarded([&]() {
    Grid grid(256);
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
      std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
      if (!ok) ++failures;
    };

    // Zero potential: lambda_{n,0} = (n+1/2)^2, lambda_{n,1} = n^2.
    PotentialPair zero = builtin_potential("zero", grid);
    CharFnModel model = build_w_functions(zero);
    SpectrumOptions opt = spectrum_options(config);
    Spectrum s0 = compute_spectrum(0, model, 16, opt);
    Spectrum s1 = compute_spectrum(1, model, 16, opt);
    double worst = 0.0;
    for (int n = 0; n < 16; ++n) {
      worst = std::max(worst,
                       std::abs(s0.lambdas[n] - cplx((n + 0.5) * (n + 0.5))));
      worst = std::max(worst, std::abs(s1.lambdas[n] - cplx(double(n) * n)));
    }
    check("zero-potential spectra", worst < 1e-8);

    // Closed-form spot checks at lambda = 1.
    PotentialPair sqm = builtin_potential("step-qminus", grid);
    CharFnEvaluator evm(build_w_functions(sqm));
    check("step-qminus Delta_0(1) = 0",
          std::abs(evm.eval(0, cplx(1.0))) < 1e-6);
    check("step-qminus Delta_1(1) = -1",
          std::abs(evm.eval(1, cplx(1.0)) - cplx(-1.0)) < 1e-6);
    PotentialPair sqp = builtin_potential("step-qplus", grid);
    CharFnEvaluator evp(build_w_functions(sqp));
    check("step-qplus Delta_0(1) = pi/4 - 1",
          std::abs(evp.eval(0, cplx(1.0)) - cplx(kPi / 4.0 - 1.0)) < 1e-6);
    check("step-qplus Delta_1(1) = 1/2",
          std::abs(evp.eval(1, cplx(1.0)) - cplx(0.5)) < 1e-6);

    // Small roundtrip.
    RunConfig rt = config;
    rt.n_eigen = 32;
    rt.grid_m = 256;
    PotentialPair pot = builtin_potential("step-qplus", grid);
    ForwardOutput fw = forward_spectra(rt, pot);
    InverseResult res =
        run_algorithm1(fw.s0, fw.s1, pot.delay(), grid, inverse_options(rt));
    double err = relative_l2_error(res.q, pot);
    check("step-qplus roundtrip error < 10%", err < 0.10);

    return failures == 0 ? kExitOk : kExitFailure;
  });
}

}  // namespace specdelay
