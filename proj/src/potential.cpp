#include "specdelay/potential.hpp"

#include <cmath>
#include <random>

#include "specdelay/numerics.hpp"

namespace specdelay {

PotentialPair::PotentialPair(const Grid& grid, Delay requested_a,
                             PiecewiseGridFn q)
    : a_(requested_a), q_(std::move(q)) {
  SnappedDelay snap = snap_delay(requested_a, grid);
  a_ = snap.a;
  snap_distance_ = snap.snap_distance;
  if (q_.break_node() != snap.node)
    throw DomainError("PotentialPair: split node does not match the delay");
  pminus_ = q_.prefix_lo();
  pplus_ = q_.prefix_hi();
}

PotentialPair PotentialPair::from_pieces(
    const Grid& grid, Delay a, const std::function<cplx(double)>& fminus,
    const std::function<cplx(double)>& fplus) {
  SnappedDelay snap = snap_delay(a, grid);
  PiecewiseGridFn q =
      PiecewiseGridFn::from_pieces(grid, snap.node, fminus, fplus);
  return PotentialPair(grid, a, std::move(q));
}

double PotentialPair::l2_norm() const {
  const Grid& g = grid();
  std::vector<cplx> sq(g.size(), 0.0);
  for (int k = 0; k <= a_node(); ++k) sq[k] = std::norm(q_.lo()[k]);
  QuadratureRule rule{QuadKind::trapezoid, g};
  cplx lo_part = integrate(sq, 0.0, a(), rule);
  std::fill(sq.begin(), sq.end(), cplx(0.0));
  for (int k = a_node(); k <= g.m(); ++k)
    sq[k] = std::norm(q_.hi()[k - a_node()]);
  cplx hi_part = integrate(sq, a(), kPi, rule);
  return std::sqrt(std::abs(lo_part.real() + hi_part.real()));
}

std::vector<cplx> PotentialPair::to_nodes() const {
  const Grid& g = grid();
  std::vector<cplx> out(g.size(), 0.0);
  int ia = a_node();
  for (int k = 0; k < ia; ++k) out[k] = q_.lo()[k];
  for (int k = ia + 1; k <= g.m(); ++k) out[k] = q_.hi()[k - ia];
  out[ia] = 0.5 * (q_.lo()[ia] + q_.hi()[0]);
  return out;
}

PotentialPair split_potential(const std::vector<cplx>& q_nodes, Delay a,
                              const Grid& grid) {
  if (static_cast<int>(q_nodes.size()) != grid.size())
    throw DomainError("split_potential: node count does not match the grid");
  SnappedDelay snap = snap_delay(a, grid);
  std::vector<cplx> lo(q_nodes.begin(), q_nodes.begin() + snap.node + 1);
  std::vector<cplx> hi(q_nodes.begin() + snap.node, q_nodes.end());
  return PotentialPair(
      grid, a, PiecewiseGridFn(grid, snap.node, std::move(lo), std::move(hi)));
}

namespace {

PotentialPair make_builtin(const std::string& name, const Grid& grid) {
  auto zero = [](double) { return cplx(0.0); };
  if (name == "zero")
    return PotentialPair::from_pieces(grid, Delay(kPi / 2.0), zero, zero);
  if (name == "step-qplus")
    return PotentialPair::from_pieces(grid, Delay(kPi / 2.0), zero,
                                      [](double) { return cplx(1.0); });
  if (name == "step-qminus")
    return PotentialPair::from_pieces(grid, Delay(kPi / 2.0),
                                      [](double) { return cplx(1.0); }, zero);
  if (name == "smooth")
    return PotentialPair::from_pieces(
        grid, Delay(0.6 * kPi),
        [](double x) { return cplx(std::sin(2.0 * x)); },
        [](double x) { return cplx(std::cos(x)); });
  throw DomainError("unknown built-in potential: " + name);
}

}  // namespace

PotentialPair builtin_potential(const std::string& name, const Grid& grid) {
  return make_builtin(name, grid);
}

const std::vector<std::string>& builtin_potential_names() {
  static const std::vector<std::string> names = {"zero", "step-qplus",
                                                 "step-qminus", "smooth"};
  return names;
}

PotentialPair random_potential(unsigned seed, Delay a, const Grid& grid,
                               bool complex_valued) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto draw = [&]() {
    double re = coef(rng);
    double im = complex_valued ? 0.35 * coef(rng) : 0.0;
    return cplx(re, im);
  };
  // Low-order trigonometric pieces keep the potential smooth within each
  // side of the delay.
  std::vector<cplx> cm(4), cp(4);
  for (auto& c : cm) c = draw();
  for (auto& c : cp) c = draw();
  auto fminus = [cm](double x) {
    return cm[0] + cm[1] * std::cos(x) + cm[2] * std::sin(2.0 * x) +
           cm[3] * std::cos(3.0 * x);
  };
  auto fplus = [cp](double x) {
    return cp[0] + cp[1] * std::sin(x) + cp[2] * std::cos(2.0 * x) +
           cp[3] * std::sin(3.0 * x);
  };
  PotentialPair pot = PotentialPair::from_pieces(grid, a, fminus, fplus);
  double norm = pot.l2_norm();
  if (norm < 1e-12) return pot;
  double scale = 1.0 / norm;
  auto sm = [fminus, scale](double x) { return scale * fminus(x); };
  auto sp = [fplus, scale](double x) { return scale * fplus(x); };
  return PotentialPair::from_pieces(grid, a, sm, sp);
}

double relative_l2_error(const PotentialPair& approx,
                         const PotentialPair& exact) {
  if (approx.grid() != exact.grid() || approx.a_node() != exact.a_node())
    throw DomainError("relative_l2_error: incompatible potentials");
  const Grid& g = approx.grid();
  int ia = approx.a_node();
  QuadratureRule rule{QuadKind::trapezoid, g};
  std::vector<cplx> diff(g.size(), 0.0), ref(g.size(), 0.0);
  for (int k = 0; k <= ia; ++k) {
    diff[k] = std::norm(approx.qminus_nodes()[k] - exact.qminus_nodes()[k]);
    ref[k] = std::norm(exact.qminus_nodes()[k]);
  }
  double err = integrate(diff, 0.0, approx.a(), rule).real();
  double nrm = integrate(ref, 0.0, approx.a(), rule).real();
  std::fill(diff.begin(), diff.end(), cplx(0.0));
  std::fill(ref.begin(), ref.end(), cplx(0.0));
  for (int k = ia; k <= g.m(); ++k) {
    diff[k] =
        std::norm(approx.qplus_nodes()[k - ia] - exact.qplus_nodes()[k - ia]);
    ref[k] = std::norm(exact.qplus_nodes()[k - ia]);
  }
  err += integrate(diff, approx.a(), kPi, rule).real();
  nrm += integrate(ref, approx.a(), kPi, rule).real();
  if (nrm == 0.0) return std::sqrt(err);
  return std::sqrt(err / nrm);
}

}  // namespace specdelay
