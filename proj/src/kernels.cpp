#include "specdelay/kernels.hpp"

#include <cmath>

namespace specdelay {

namespace {

void require_triangle(double x, double t, const PotentialPair& pot,
                      const char* who) {
  const double eps = 1e-12;
  if (t < pot.a() - eps || t > x + eps || x > kPi + eps)
    throw DomainError(std::string(who) + ": requires a <= t <= x <= pi");
}

}  // namespace

cplx kernel_P(double x, double t, const PotentialPair& pot) {
  require_triangle(x, t, pot, "kernel_P");
  const double a = pot.a();
  return 0.5 * pot.qplus_prefix().between(0.5 * (a + t), x + 0.5 * (a - t));
}

cplx kernel_K(double x, double t, const PotentialPair& pot) {
  require_triangle(x, t, pot, "kernel_K");
  const double a = pot.a();
  const Prefix& fp = pot.qplus_prefix();
  return 0.5 * fp.between(a, 0.5 * (a + t)) +
         0.5 * fp.between(a, x + 0.5 * (a - t));
}

cplx kernel_Kj(int j, double x, double t, const PotentialPair& pot) {
  require_triangle(x, t, pot, "kernel_Kj");
  if (j != 0 && j != 1) throw DomainError("kernel_Kj: j must be 0 or 1");
  const double a = pot.a();
  const PiecewiseGridFn& q = pot.split_fn();
  cplx lhs = q.value_hi(0.5 * (a + t));
  cplx rhs = q.value_hi(x + 0.5 * (a - t));
  double sign = (j == 0) ? 1.0 : -1.0;
  return 0.25 * (lhs - sign * rhs);
}

cplx omega_of_x(double x, const PotentialPair& pot) {
  if (x < pot.a() - 1e-12 || x > kPi + 1e-12)
    throw DomainError("omega_of_x: requires a <= x <= pi");
  return 0.5 * pot.qplus_prefix().between(pot.a(), x);
}

CharFnModel build_w_functions(const PotentialPair& pot) {
  const Grid& grid = pot.grid();
  const int m = grid.m();
  const int ia = pot.a_node();
  const int wb = m - ia;  // w break node: pi - a
  const double a = pot.a();
  const double h = grid.h();
  const Prefix& fplus = pot.qplus_prefix();
  const PiecewiseGridFn& q = pot.split_fn();
  const cplx fplus_total = fplus.at(kPi);

  // On (pi-a, pi): w0(pi - u) = w1(pi - u) = qminus(u), u in (0, a).
  std::vector<cplx> whi(ia + 1);
  for (int k = 0; k <= ia; ++k) whi[k] = pot.qminus_nodes()[ia - k];

  // On (0, pi-a): evaluate at x = node(kx), kx in [ia, m]; the result lands
  // at w node m - kx. The double integrals run over t in [0, x-a] with the
  // inner qplus masses read from the antiderivative.
  std::vector<cplx> w0lo(wb + 1), w1lo(wb + 1);
  for (int kx = ia; kx <= m; ++kx) {
    const double x = grid.node(kx);
    const cplx qp_near = q.value_hi(0.5 * (a + x));
    const cplx qp_far = q.value_hi(kPi + 0.5 * (a - x));

    cplx t0 = 0.0, t1 = 0.0;
    const int nt = kx - ia;  // upper limit x - a = node nt
    for (int l = 0; l <= nt; ++l) {
      const double t = grid.node(l);
      const cplx qm = pot.qminus_nodes()[l];
      const cplx f_lo = fplus.at(0.5 * (a + x + t));
      const cplx f_hi = fplus.at(kPi + 0.5 * (a + t - x));
      const double w = (l == 0 || l == nt) ? 0.5 : 1.0;
      t0 += w * qm * (f_hi - f_lo);
      t1 += w * qm * ((fplus_total - f_lo) + (fplus_total - f_hi));
    }
    t0 *= h;
    t1 *= h;

    w0lo[m - kx] = 0.25 * (qp_near - qp_far) + 0.5 * t0;
    w1lo[m - kx] = 0.25 * (qp_near + qp_far) + 0.5 * t1;
  }

  CharFnModel model{grid, pot.delay(), ia, omega_of_x(kPi, pot),
                    PiecewiseGridFn(grid, wb, w0lo, whi),
                    PiecewiseGridFn(grid, wb, w1lo, whi)};
  return model;
}

}  // namespace specdelay
