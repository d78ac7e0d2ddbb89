#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specdelay/kernels.hpp"
#include "specdelay/numerics.hpp"
#include "specdelay/potential.hpp"

using namespace specdelay;

namespace {

std::vector<cplx> node_values(const Grid& grid, cplx (*f)(double)) {
  std::vector<cplx> v(grid.size());
  for (int k = 0; k <= grid.m(); ++k) v[k] = f(grid.node(k));
  return v;
}

}  // namespace

TEST_CASE("delay domain is enforced") {
  CHECK_THROWS_AS(Delay{0.3 * kPi}, DelayDomainError);
  CHECK_THROWS_AS(Delay{kPi}, DelayDomainError);
  CHECK_THROWS_AS(Delay{-1.0}, DelayDomainError);
  CHECK(Delay(kPi / 2.0).value() == kPi / 2.0);
  CHECK_THROWS_AS(Grid{8}, DomainError);
}

TEST_CASE("split_potential: zero and constant potentials at a = pi/2") {
  Grid grid(512);
  auto zeros = node_values(grid, [](double) { return cplx(0.0); });
  PotentialPair z = split_potential(zeros, Delay(kPi / 2.0), grid);
  for (const cplx& v : z.qminus_nodes()) CHECK(v == cplx(0.0));
  for (const cplx& v : z.qplus_nodes()) CHECK(v == cplx(0.0));
  CHECK(z.a() == doctest::Approx(kPi / 2.0));
  CHECK(z.snap_distance() == 0.0);

  auto ones = node_values(grid, [](double) { return cplx(1.0); });
  PotentialPair c = split_potential(ones, Delay(kPi / 2.0), grid);
  CHECK(c.a_node() == 256);
  for (const cplx& v : c.qminus_nodes()) CHECK(v == cplx(1.0));
  for (const cplx& v : c.qplus_nodes()) CHECK(v == cplx(1.0));
  CHECK(c.qminus_at(2.0) == cplx(0.0));  // zero-extended beyond a
  CHECK(c.qplus_at(1.0) == cplx(0.0));   // zero-extended below a
}

TEST_CASE("split_potential: identity potential splits pointwise at 0.6 pi") {
  Grid grid(512);
  auto ramp = node_values(grid, [](double x) { return cplx(x); });
  PotentialPair p = split_potential(ramp, Delay(0.6 * kPi), grid);
  // 0.6 pi sits between nodes; it snaps to node 307 (512 * 0.6 = 307.2).
  CHECK(p.a_node() == 307);
  CHECK(p.snap_distance() == doctest::Approx(0.2 * grid.h()).epsilon(1e-9));
  int ia = p.a_node();
  for (int k = 0; k <= grid.m(); ++k) {
    if (k <= ia) CHECK(p.qminus_nodes()[k] == cplx(grid.node(k)));
    if (k >= ia) CHECK(p.qplus_nodes()[k - ia] == cplx(grid.node(k)));
    // zero-extensions vanish strictly beyond the delay
    if (k > ia) CHECK(p.qminus_at(grid.node(k)) == cplx(0.0));
    if (k < ia) CHECK(p.qplus_at(grid.node(k)) == cplx(0.0));
  }
}

TEST_CASE("kernel_P: zero potential, constant potential, degenerate bounds") {
  Grid grid(512);
  PotentialPair zero = builtin_potential("zero", grid);
  CHECK(kernel_P(3.0, 2.0, zero) == cplx(0.0));

  PotentialPair step = builtin_potential("step-qplus", grid);
  // q+ = 1: P(x,t) = (x - t)/2 when both bounds stay inside (a, pi).
  CHECK(std::abs(kernel_P(3.0, 2.0, step) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(kernel_P(2.9, 1.8, step) - cplx(0.55)) < 1e-12);
  CHECK(std::abs(kernel_P(3.0, 3.0, step)) < 1e-15);  // empty interval

  CHECK_THROWS_AS(kernel_P(3.0, 1.0, step), DomainError);  // t < a
  CHECK_THROWS_AS(kernel_P(2.0, 2.5, step), DomainError);  // t > x
  CHECK_THROWS_AS(kernel_P(3.5, 2.0, step), DomainError);  // x > pi
}

TEST_CASE("kernel_K: constant potential is t-independent; K(x,a) = omega(x)") {
  Grid grid(512);
  PotentialPair zero = builtin_potential("zero", grid);
  CHECK(kernel_K(3.0, 2.0, zero) == cplx(0.0));

  PotentialPair step = builtin_potential("step-qplus", grid);
  const double expected = 0.5 * (3.0 - kPi / 2.0);  // (x-a)/2 ~ 0.7146
  for (double t : {1.8, 2.2, 2.9})
    CHECK(std::abs(kernel_K(3.0, t, step) - cplx(expected)) < 1e-12);

  // At t = a both summands collapse onto the running half-integral.
  PotentialPair wavy = PotentialPair::from_pieces(
      grid, Delay(kPi / 2.0), [](double) { return cplx(0.0); },
      [](double x) { return cplx(std::sin(x), 0.2 * std::cos(2.0 * x)); });
  for (double x : {1.8, 2.4, 3.0, kPi})
    CHECK(std::abs(kernel_K(x, wavy.a(), wavy) - omega_of_x(x, wavy)) < 1e-13);
}

TEST_CASE("kernel_Kj: constants and the mirror-symmetric cancellation") {
  Grid grid(512);
  PotentialPair zero = builtin_potential("zero", grid);
  CHECK(kernel_Kj(0, 3.0, 2.0, zero) == cplx(0.0));
  CHECK(kernel_Kj(1, 3.0, 2.0, zero) == cplx(0.0));

  PotentialPair step = PotentialPair::from_pieces(
      grid, Delay(kPi / 2.0), [](double) { return cplx(0.0); },
      [](double) { return cplx(0.7); });
  CHECK(std::abs(kernel_Kj(0, 3.0, 2.0, step)) < 1e-12);
  CHECK(std::abs(kernel_Kj(1, 3.0, 2.0, step) - cplx(0.35)) < 1e-12);

  // q+ symmetric about (a+pi)/2: the two midpoint arguments of K_0(pi, t)
  // are mirror points, so K_0 vanishes.
  const double c = 0.75 * kPi;
  PotentialPair sym = PotentialPair::from_pieces(
      grid, Delay(kPi / 2.0), [](double) { return cplx(0.0); },
      [c](double x) { return cplx(std::cos(x - c)); });
  for (double t : {1.7, 2.0, 2.8})
    CHECK(std::abs(kernel_Kj(0, kPi, t, sym)) < 1e-13);
}

TEST_CASE("omega_of_x: empty interval, constant, and sine oracle") {
  Grid grid(512);
  PotentialPair step = builtin_potential("step-qplus", grid);
  CHECK(omega_of_x(step.a(), step) == cplx(0.0));
  CHECK(std::abs(omega_of_x(kPi, step) - cplx(kPi / 4.0)) < 1e-13);

  PotentialPair sine = PotentialPair::from_pieces(
      grid, Delay(kPi / 2.0), [](double) { return cplx(0.0); },
      [](double x) { return cplx(std::sin(x)); });
  // Exact value 1/2; an independent Simpson pass over the same samples
  // bounds the trapezoid error of the implementation.
  cplx omega = omega_of_x(kPi, sine);
  CHECK(std::abs(omega - cplx(0.5)) < 1e-5);
  std::vector<cplx> qp(grid.size(), 0.0);
  for (int k = 256; k <= grid.m(); ++k) qp[k] = sine.qplus_nodes()[k - 256];
  QuadratureRule simpson{QuadKind::simpson, grid};
  cplx oracle = 0.5 * integrate(qp, kPi / 2.0, kPi, simpson);
  CHECK(std::abs(oracle - cplx(0.5)) < 1e-9);
  CHECK(std::abs(omega - oracle) < 1e-5);
}

TEST_CASE("build_w_functions: zero map") {
  Grid grid(512);
  CharFnModel model = build_w_functions(builtin_potential("zero", grid));
  CHECK(model.omega == cplx(0.0));
  for (const cplx& v : model.w0.lo()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w0.hi()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w1.lo()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w1.hi()) CHECK(v == cplx(0.0));
}

TEST_CASE("build_w_functions: pure q+ step") {
  Grid grid(512);
  CharFnModel model = build_w_functions(builtin_potential("step-qplus", grid));
  CHECK(std::abs(model.omega - cplx(kPi / 4.0)) < 1e-13);
  // w0 vanishes identically; w1 = 1/2 below pi - a = pi/2 and 0 above.
  for (const cplx& v : model.w0.lo()) CHECK(std::abs(v) < 1e-13);
  for (const cplx& v : model.w0.hi()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w1.lo()) CHECK(std::abs(v - cplx(0.5)) < 1e-13);
  for (const cplx& v : model.w1.hi()) CHECK(v == cplx(0.0));
}

TEST_CASE("build_w_functions: pure q- step") {
  Grid grid(512);
  CharFnModel model =
      build_w_functions(builtin_potential("step-qminus", grid));
  CHECK(model.omega == cplx(0.0));
  for (const cplx& v : model.w0.lo()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w1.lo()) CHECK(v == cplx(0.0));
  for (const cplx& v : model.w0.hi()) CHECK(v == cplx(1.0));
  for (const cplx& v : model.w1.hi()) CHECK(v == cplx(1.0));
}

TEST_CASE("support invariant and w-overlap on randomized potentials") {
  Grid grid(256);
  for (double a : {kPi / 2.0, 0.6 * kPi, 0.75 * kPi}) {
    for (unsigned seed : {11u, 12u, 13u}) {
      PotentialPair pot = random_potential(seed, Delay(a), grid);
      int ia = pot.a_node();
      // The zero-extended product vanishes at every node off the snapped
      // delay node (which legitimately carries both one-sided samples).
      for (int k = 0; k <= grid.m(); ++k) {
        if (k == ia) continue;
        double x = grid.node(k);
        CHECK(pot.qminus_at(x) * pot.qplus_at(x) == cplx(0.0));
      }
      CharFnModel model = build_w_functions(pot);
      // Overlap (both equal qminus(pi - x) on (pi - a, pi)).
      for (size_t i = 0; i < model.w0.hi().size(); ++i)
        CHECK(model.w0.hi()[i] == model.w1.hi()[i]);
      for (int k = 0; k <= ia; ++k)
        CHECK(model.w0.hi_node(grid.m() - k) == pot.qminus_nodes()[k]);
      // Kernel consistency across the delay range.
      for (int k = ia; k <= grid.m(); k += 37) {
        double x = grid.node(k);
        CHECK(std::abs(kernel_K(x, pot.a(), pot) - omega_of_x(x, pot)) <
              1e-12);
      }
    }
  }
}

TEST_CASE("build_w_functions is additive in q- when q+ = 0") {
  Grid grid(256);
  auto f1 = [](double x) { return cplx(std::sin(x), 0.4 * std::cos(x)); };
  auto f2 = [](double x) { return cplx(0.3 * std::cos(2.0 * x), -0.2); };
  auto zero = [](double) { return cplx(0.0); };
  auto sum = [&](double x) { return f1(x) + f2(x); };
  Delay a(0.6 * kPi);
  CharFnModel m1 =
      build_w_functions(PotentialPair::from_pieces(grid, a, f1, zero));
  CharFnModel m2 =
      build_w_functions(PotentialPair::from_pieces(grid, a, f2, zero));
  CharFnModel ms =
      build_w_functions(PotentialPair::from_pieces(grid, a, sum, zero));
  CHECK(ms.omega == cplx(0.0));
  for (size_t i = 0; i < ms.w0.lo().size(); ++i)
    CHECK(std::abs(ms.w0.lo()[i] - (m1.w0.lo()[i] + m2.w0.lo()[i])) < 1e-13);
  for (size_t i = 0; i < ms.w1.hi().size(); ++i)
    CHECK(std::abs(ms.w1.hi()[i] - (m1.w1.hi()[i] + m2.w1.hi()[i])) < 1e-13);
}
