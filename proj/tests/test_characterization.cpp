#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specdelay/char_fn.hpp"
#include "specdelay/characterization.hpp"
#include "specdelay/inverse.hpp"

using namespace specdelay;

namespace {

Spectrum unperturbed(int j, int N, double delay = kPi / 2.0) {
  Spectrum s;
  s.j = j;
  s.delay = delay;
  for (int n = 0; n < N; ++n) {
    double r = n + 0.5 * (1 - j);
    s.lambdas.push_back(cplx(r * r));
  }
  return s;
}

Spectrum forward_spectrum(const PotentialPair& pot, int j, int N) {
  return compute_spectrum(j, build_w_functions(pot), N);
}

std::vector<double> r_grid() {
  return {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
}

}  // namespace

TEST_CASE("check_asymptotics: trivial, synthetic, and forward spectra") {
  AsymptoticsFit fit = check_asymptotics(unperturbed(0, 64), Delay(kPi / 2.0));
  CHECK(std::abs(fit.omega_fit) < 1e-10);
  for (const cplx& k : fit.kappa_residuals) CHECK(std::abs(k) < 1e-9);

  // rho_n = n + 0.7 cos(n a)/(pi n) + 1/n^2: omega 0.7, kappa ~ 1/n.
  Spectrum synth;
  synth.j = 1;
  synth.delay = 0.6 * kPi;
  for (int n = 0; n < 64; ++n) {
    double r = n;
    if (n > 0)
      r += 0.7 * std::cos(n * synth.delay) / (kPi * n) + 1.0 / (double(n) * n);
    synth.lambdas.push_back(cplx(r * r));
  }
  AsymptoticsFit sfit = check_asymptotics(synth, Delay(0.6 * kPi));
  CHECK(std::abs(sfit.omega_fit - cplx(0.7)) < 0.05);
  for (int n = 16; n <= 60; n += 11)
    CHECK(std::abs(sfit.kappa_residuals[n - 1] - cplx(1.0 / n)) < 0.02);

  Grid grid(512);
  Spectrum s1 = forward_spectrum(builtin_potential("step-qplus", grid), 1, 64);
  AsymptoticsFit ffit = check_asymptotics(s1, Delay(kPi / 2.0));
  CHECK(std::abs(ffit.omega_fit - cplx(kPi / 4.0)) < 0.05);

  CHECK_THROWS_AS(check_asymptotics(unperturbed(1, 16), Delay(kPi / 2.0)),
                  DomainError);
}

TEST_CASE("check_A4: trivial zero, q-=0 necessity, q-!=0 counterexample") {
  CHECK(std::abs(check_A4(unperturbed(1, 64), cplx(0.0))) < 1e-12);

  Grid grid(1024);
  Spectrum qp1 =
      forward_spectrum(builtin_potential("step-qplus", grid), 1, 256);
  cplx res = check_A4(qp1, cplx(kPi / 4.0));
  CHECK(std::abs(res) < 1e-3);

  Spectrum qm1 =
      forward_spectrum(builtin_potential("step-qminus", grid), 1, 256);
  cplx bad = check_A4(qm1, cplx(0.0));
  CHECK(std::abs(bad - cplx(0.5)) < 0.05);

  // Identity: the residual equals (Delta_1(0) - 2 omega)/pi to rounding.
  cplx omega(0.37, -0.12);
  cplx direct = ProductCharFn(qp1).eval(cplx(0.0)) / kPi - 2.0 * omega / kPi;
  cplx algebraic = (ProductCharFn(qp1).eval(cplx(0.0)) - 2.0 * omega) / kPi;
  CHECK(std::abs(check_A4(qp1, omega) - direct) < 1e-14);
  CHECK(std::abs(direct - algebraic) < 1e-10);
}

TEST_CASE("theta identity: theta_0 from Delta_0 equals the w0 transform") {
  Grid grid(512);
  PotentialPair pot = builtin_potential("smooth", grid);
  CharFnModel model = build_w_functions(pot);
  CharFnEvaluator ev(model);
  const double pa = kPi - model.a.value();
  for (int i = 0; i < 10; ++i) {
    for (cplx rho : {cplx(0.7 + 0.61 * i), cplx(0.0, 0.3 + 0.29 * i)}) {
      cplx theta0 = rho * (ev.eval(0, rho * rho) - std::cos(rho * kPi)) -
                    model.omega * std::sin(rho * pa);
      cplx direct = rho * integrate_against_sin_over_rho(model.w0, rho);
      CHECK(std::abs(theta0 - direct) < 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("check_overdetermination: zero, matched, and mismatched spectra") {
  auto zero_decay =
      check_overdetermination(unperturbed(0, 64), unperturbed(1, 64),
                              Delay(kPi / 2.0), r_grid());
  for (double v : zero_decay) CHECK(v < 1e-10);

  Grid grid(512);
  PotentialPair pot = builtin_potential("smooth", grid);
  Spectrum s0 = forward_spectrum(pot, 0, 64);
  Spectrum s1 = forward_spectrum(pot, 1, 64);
  auto matched = check_overdetermination(s0, s1, pot.delay(), r_grid());
  CHECK(matched.back() < matched.front());

  // Different q- on the two spectra (same delay): the decay breaks down.
  PotentialPair qm = builtin_potential("step-qminus", grid);
  PotentialPair qp = builtin_potential("step-qplus", grid);
  Spectrum o0 = forward_spectrum(qm, 0, 64);
  Spectrum o1 = forward_spectrum(qp, 1, 64);
  auto mismatched =
      check_overdetermination(o0, o1, Delay(kPi / 2.0), r_grid());
  CHECK(mismatched.back() > mismatched.front());
}

TEST_CASE("estimate_exponential_type: zero, q-=0 bound, q-!=0 growth") {
  Spectrum trivial0 = unperturbed(0, 64);
  CHECK(estimate_exponential_type(trivial0, 0, cplx(0.0), Delay(kPi / 2.0),
                                  r_grid()) == 0.0);

  Grid grid(512);
  PotentialPair qp = builtin_potential("step-qplus", grid);
  Spectrum p0 = forward_spectrum(qp, 0, 128);
  Spectrum p1 = forward_spectrum(qp, 1, 128);
  const double pa = kPi - qp.a();
  double t0 =
      estimate_exponential_type(p0, 0, cplx(kPi / 4.0), qp.delay(), r_grid());
  double t1 =
      estimate_exponential_type(p1, 1, cplx(kPi / 4.0), qp.delay(), r_grid());
  CHECK(t0 <= pa + 0.1);
  CHECK(t1 <= pa + 0.1);

  PotentialPair qm = builtin_potential("step-qminus", grid);
  Spectrum m0 = forward_spectrum(qm, 0, 128);
  double tm =
      estimate_exponential_type(m0, 0, cplx(0.0), qm.delay(), r_grid());
  CHECK(tm > kPi - 0.35);  // w supported up to pi
  CHECK(tm < kPi + 0.1);
}

TEST_CASE("characterize: aggregated report and omega agreement") {
  Grid grid(512);
  PotentialPair pot = builtin_potential("step-qplus", grid);
  Spectrum s0 = forward_spectrum(pot, 0, 128);
  Spectrum s1 = forward_spectrum(pot, 1, 128);
  CharacterizationReport rep = characterize(s0, s1, pot.delay());
  CHECK(std::abs(rep.omega_fit - cplx(kPi / 4.0)) < 0.05);
  CHECK(rep.kappa_stabilized);
  CHECK(rep.char_decreasing);
  CHECK(rep.exp_type0 <= (kPi - pot.a()) + 0.1);
  CHECK(rep.exp_type1 <= (kPi - pot.a()) + 0.1);

  // Fitted omega agrees with the inverse-module estimators.
  cplx est_ratio = estimate_omega_ratio(s1, pot.delay());
  cplx est_sample = estimate_omega_sample(s1, pot.delay());
  CHECK(std::abs(rep.omega_fit - est_ratio) < 0.05);
  CHECK(std::abs(rep.omega_fit - est_sample) < 0.05);

  // Single-spectrum invocation: decay section empty.
  CharacterizationReport solo = characterize(std::nullopt, s1, pot.delay());
  CHECK(solo.char_decay.empty());
  CHECK(std::abs(solo.a4_residual) < 0.02);
}
