#include "specdelay/ivp.hpp"

#include <array>
#include <cmath>

#include "specdelay/numerics.hpp"

namespace specdelay {

namespace {

template <size_t N>
using State = std::array<cplx, N>;

template <size_t N, typename Rhs>
State<N> rk4_step(const Rhs& rhs, double s, double h, const State<N>& y) {
  auto add = [](const State<N>& a, const State<N>& b, double c) {
    State<N> r;
    for (size_t i = 0; i < N; ++i) r[i] = a[i] + c * b[i];
    return r;
  };
  State<N> k1 = rhs(s, y);
  State<N> k2 = rhs(s + 0.5 * h, add(y, k1, 0.5 * h));
  State<N> k3 = rhs(s + 0.5 * h, add(y, k2, 0.5 * h));
  State<N> k4 = rhs(s + h, add(y, k3, h));
  State<N> out;
  for (size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

struct EndState {
  cplx y, dy;
  std::vector<cplx> nodes;  // y sampled at grid nodes when requested
};

EndState integrate_once(const PotentialPair& pot, cplx lambda, int refine,
                        bool keep_nodes) {
  const Grid& grid = pot.grid();
  const int ia = pot.a_node();
  const int m = grid.m();
  const double a = pot.a();
  const int sub = 1 << refine;
  const PiecewiseGridFn& q = pot.split_fn();

  EndState out;
  if (keep_nodes) out.nodes.resize(grid.size());

  // First segment [0, a]: z'' = -lambda z + qminus(x), z(0)=1, z'(0)=0
  // (the delayed argument reads the constant initial function there).
  auto rhs_a = [&](double x, const State<2>& s) {
    return State<2>{s[1], -lambda * s[0] + q.value_lo(x)};
  };
  State<2> za{cplx(1.0), cplx(0.0)};
  const double ha = a / (ia * sub);
  if (keep_nodes) out.nodes[0] = za[0];
  for (int step = 0; step < ia * sub; ++step) {
    za = rk4_step(rhs_a, step * ha, ha, za);
    if (keep_nodes && (step + 1) % sub == 0)
      out.nodes[(step + 1) / sub] = za[0];
  }

  // Second segment as a coupled system in s = x - a: Y(s) = y(a+s) and a
  // synchronized re-integration Z(s) = y(s). Since pi - a <= a, Z never
  // leaves the first segment.
  auto rhs_b = [&](double s, const State<4>& v) {
    return State<4>{v[1], -lambda * v[0] + q.value_hi(a + s) * v[2], v[3],
                    -lambda * v[2] + q.value_lo(s)};
  };
  State<4> vb{za[0], za[1], cplx(1.0), cplx(0.0)};
  const int nb = (m - ia) * sub;
  const double hb = (kPi - a) / nb;
  for (int step = 0; step < nb; ++step) {
    vb = rk4_step(rhs_b, step * hb, hb, vb);
    if (keep_nodes && (step + 1) % sub == 0)
      out.nodes[ia + (step + 1) / sub] = vb[0];
  }
  out.y = vb[0];
  out.dy = vb[1];
  return out;
}

}  // namespace

IvpSolution solve_ivp_method_of_steps(const PotentialPair& pot, cplx lambda,
                                      const IvpOptions& opt) {
  EndState prev = integrate_once(pot, lambda, 0, false);
  for (int r = 1; r <= opt.max_halvings; ++r) {
    EndState cur = integrate_once(pot, lambda, r, false);
    double scale =
        std::max({1.0, std::abs(cur.y), std::abs(cur.dy)});
    if (std::abs(cur.y - prev.y) <= opt.tol * scale &&
        std::abs(cur.dy - prev.dy) <= opt.tol * scale) {
      IvpSolution sol{cur.y, cur.dy, std::nullopt};
      if (opt.keep_trajectory)
        sol.trajectory = integrate_once(pot, lambda, r, true).nodes;
      return sol;
    }
    prev = cur;
  }
  throw StepSizeFailure(
      "solve_ivp_method_of_steps: halving did not reach tolerance");
}

std::pair<cplx, cplx> eval_cauchy_z(cplx lambda, const PotentialPair& pot) {
  const Grid& grid = pot.grid();
  const int m = grid.m();
  const int ia = pot.a_node();
  const double a = pot.a();
  const double h = grid.h();
  const cplx rho = rho_of(lambda);
  const Prefix& fplus = pot.qplus_prefix();
  const cplx fplus_total = fplus.at(kPi);

  // Outer integrands G0 (against sin(rho(pi-t))/rho) and G1 (against
  // cos(rho(pi-t))): the free term qminus on (0, a), plus for t > a the
  // inner integral over tau in (0, t-a) of qminus times qplus masses.
  std::vector<cplx> g0hi(m - ia + 1, 0.0), g1hi(m - ia + 1, 0.0);
  for (int kt = ia; kt <= m; ++kt) {
    const double t = grid.node(kt);
    const int ntau = kt - ia;
    cplx acc0 = 0.0, acc1 = 0.0;
    for (int l = 0; l <= ntau; ++l) {
      const double tau = grid.node(l);
      const cplx qm = pot.qminus_nodes()[l];
      const cplx f_lo = fplus.at(0.5 * (a + t + tau));
      const cplx f_hi = fplus.at(kPi + 0.5 * (a + tau - t));
      const double w = (l == 0 || l == ntau) ? 0.5 : 1.0;
      acc0 += w * qm * (f_hi - f_lo);
      acc1 += w * qm * ((fplus_total - f_lo) + (fplus_total - f_hi));
    }
    g0hi[kt - ia] = 0.5 * h * acc0;
    g1hi[kt - ia] = 0.5 * h * acc1;
  }
  PiecewiseGridFn g0(grid, ia, pot.qminus_nodes(), g0hi);
  PiecewiseGridFn g1(grid, ia, pot.qminus_nodes(), g1hi);

  cplx z = integrate_against_sin_over_rho(g0.reflected(), rho);
  cplx dz = integrate_against_cos(g1.reflected(), rho);
  return {z, dz};
}

}  // namespace specdelay
