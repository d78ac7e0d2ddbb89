#include "specdelay/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specdelay {

namespace {

cplx interp_nodes(const std::vector<cplx>& v, double h, double x) {
  double u = x / h;
  int n = static_cast<int>(v.size()) - 1;
  if (u <= 0.0) return v.front();
  if (u >= n) return v.back();
  int c = static_cast<int>(u);
  double t = u - c;
  return v[c] * (1.0 - t) + v[c + 1] * t;
}

// Trapezoid integral of the linear interpolant over [lo, hi] inside one
// whole-node range; partial cells handled exactly.
cplx trapezoid_partial(const std::vector<cplx>& v, double h, double lo,
                       double hi) {
  int n = static_cast<int>(v.size()) - 1;
  double a = std::clamp(lo / h, 0.0, static_cast<double>(n));
  double b = std::clamp(hi / h, 0.0, static_cast<double>(n));
  if (b <= a) return 0.0;
  int ca = static_cast<int>(a);
  int cb = static_cast<int>(b);
  if (cb >= n) cb = n - 1;
  if (ca > cb) ca = cb;
  auto val = [&](double u) { return interp_nodes(v, h, u * h); };
  if (ca == cb) {
    return 0.5 * (val(a) + val(b)) * (b - a) * h;
  }
  cplx total = 0.5 * (val(a) + v[ca + 1]) * (ca + 1 - a) * h;
  for (int c = ca + 1; c < cb; ++c) total += 0.5 * (v[c] + v[c + 1]) * h;
  total += 0.5 * (v[cb] + val(b)) * (b - cb) * h;
  return total;
}

}  // namespace

cplx integrate(const std::vector<cplx>& values, double lo, double hi,
               const QuadratureRule& rule) {
  if (hi < lo) throw DomainError("integrate: requires lo <= hi");
  const double h = rule.grid.h();
  if (rule.kind == QuadKind::trapezoid)
    return trapezoid_partial(values, h, lo, hi);

  // Simpson on the interior whole-node span, trapezoid partial ends.
  int ka = static_cast<int>(std::ceil(lo / h - 1e-12));
  int kb = static_cast<int>(std::floor(hi / h + 1e-12));
  ka = std::clamp(ka, 0, rule.grid.m());
  kb = std::clamp(kb, 0, rule.grid.m());
  if (kb <= ka) return trapezoid_partial(values, h, lo, hi);
  cplx total = trapezoid_partial(values, h, lo, ka * h) +
               trapezoid_partial(values, h, kb * h, hi);
  int span = kb - ka;
  int pairs = span / 2;
  for (int p = 0; p < pairs; ++p) {
    int k = ka + 2 * p;
    total += h / 3.0 * (values[k] + 4.0 * values[k + 1] + values[k + 2]);
  }
  if (span % 2 == 1)  // leftover odd cell
    total += 0.5 * h * (values[kb - 1] + values[kb]);
  return total;
}

cplx sinc(cplx z) {
  if (std::abs(z) < 0.25) {
    cplx z2 = z * z;
    return 1.0 + z2 * (-1.0 / 6.0 +
                       z2 * (1.0 / 120.0 +
                             z2 * (-1.0 / 5040.0 + z2 * (1.0 / 362880.0))));
  }
  return std::sin(z) / z;
}

cplx g2(cplx z) {
  if (std::abs(z) < 0.25) return z * g2_over_z(z);
  return (std::sin(z) - z * std::cos(z)) / (z * z);
}

cplx g2_over_z(cplx z) {
  if (std::abs(z) < 0.25) {
    cplx z2 = z * z;
    return 1.0 / 3.0 +
           z2 * (-1.0 / 30.0 +
                 z2 * (1.0 / 840.0 +
                       z2 * (-1.0 / 45360.0 + z2 * (1.0 / 3991680.0))));
  }
  return (std::sin(z) - z * std::cos(z)) / (z * z * z);
}

// Per-cell closed forms. With midpoint xm, half-width d, midpoint value g
// and slope b (f(xm + u) = g + b u on the cell):
//   int f cos(rho x) dx  = 2d [ g cos(rho xm) sinc(rho d)
//                               - b d sin(rho xm) g2(rho d) ]
//   int f sin(rho x)/rho = 2d [ g xm sinc(rho xm) sinc(rho d)
//                               + b d^2 cos(rho xm) g2_over_z(rho d) ]
// Both expressions are built from even functions of rho only.
cplx integrate_against_cos(const PiecewiseGridFn& f, cplx rho) {
  const Grid& grid = f.grid();
  const double h = grid.h(), d = 0.5 * h;
  cplx total = 0.0;
  cplx sd = sinc(rho * d), gd = g2(rho * d);
  for (int c = 0; c < grid.m(); ++c) {
    cplx v0 = f.cell_left(c), v1 = f.cell_right(c);
    double xm = (c + 0.5) * h;
    cplx g = 0.5 * (v0 + v1);
    cplx b = (v1 - v0) / h;
    total += 2.0 * d *
             (g * std::cos(rho * xm) * sd - b * d * std::sin(rho * xm) * gd);
  }
  return total;
}

cplx integrate_against_sin_over_rho(const PiecewiseGridFn& f, cplx rho) {
  const Grid& grid = f.grid();
  const double h = grid.h(), d = 0.5 * h;
  cplx total = 0.0;
  cplx sd = sinc(rho * d), god = g2_over_z(rho * d);
  for (int c = 0; c < grid.m(); ++c) {
    cplx v0 = f.cell_left(c), v1 = f.cell_right(c);
    double xm = (c + 0.5) * h;
    cplx g = 0.5 * (v0 + v1);
    cplx b = (v1 - v0) / h;
    total += 2.0 * d *
             (g * xm * sinc(rho * xm) * sd +
              b * d * d * std::cos(rho * xm) * god);
  }
  return total;
}

cplx integrate_against_cos_drho(const PiecewiseGridFn& f, cplx rho) {
  // d/drho int f cos(rho x) dx = -int f(x) x sin(rho x) dx, node trapezoid.
  const Grid& grid = f.grid();
  const double h = grid.h();
  cplx total = 0.0;
  for (int c = 0; c < grid.m(); ++c) {
    double x0 = grid.node(c), x1 = grid.node(c + 1);
    cplx t0 = -f.cell_left(c) * x0 * std::sin(rho * x0);
    cplx t1 = -f.cell_right(c) * x1 * std::sin(rho * x1);
    total += 0.5 * h * (t0 + t1);
  }
  return total;
}

cplx integrate_against_sin_over_rho_drho(const PiecewiseGridFn& f, cplx rho) {
  // d/drho [x sinc(rho x)] = -x^2 g2(rho x).
  const Grid& grid = f.grid();
  const double h = grid.h();
  cplx total = 0.0;
  for (int c = 0; c < grid.m(); ++c) {
    double x0 = grid.node(c), x1 = grid.node(c + 1);
    cplx t0 = -f.cell_left(c) * x0 * x0 * g2(rho * x0);
    cplx t1 = -f.cell_right(c) * x1 * x1 * g2(rho * x1);
    total += 0.5 * h * (t0 + t1);
  }
  return total;
}

namespace {

// Continuous-phase increment along one boundary segment, bisecting until
// each step turns by less than pi/3. Refinement concentrates where the
// curve passes near a zero; exhausting the depth there means a zero sits
// (numerically) on the boundary.
double phase_turn(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                  cplx f0, cplx f1, int depth, bool* ok) {
  double dphi = std::arg(f1 / f0);
  if (std::abs(dphi) <= kPi / 3.0 && depth > 0) return dphi;
  if (depth >= 30) {
    *ok = false;
    return 0.0;
  }
  cplx zm = 0.5 * (z0 + z1);
  cplx fm = f(zm);
  if (std::abs(fm) < 1e-300) {
    *ok = false;
    return 0.0;
  }
  double left = phase_turn(f, z0, zm, f0, fm, depth + 1, ok);
  if (!*ok) return 0.0;
  return left + phase_turn(f, zm, z1, fm, f1, depth + 1, ok);
}

}  // namespace

int winding_number(const std::function<cplx(cplx)>& f, double x0, double x1,
                   double y0, double y1) {
  std::vector<cplx> corners = {cplx(x0, y0), cplx(x1, y0), cplx(x1, y1),
                               cplx(x0, y1), cplx(x0, y0)};
  double total_turn = 0.0;
  bool ok = true;
  cplx prev_z = corners[0];
  cplx prev_f = f(prev_z);
  if (std::abs(prev_f) < 1e-300) return -1;
  const int coarse = 8;
  for (int side = 0; side < 4; ++side) {
    for (int i = 1; i <= coarse; ++i) {
      cplx z = corners[side] +
               (corners[side + 1] - corners[side]) * (double(i) / coarse);
      cplx fz = f(z);
      if (std::abs(fz) < 1e-300) return -1;
      total_turn += phase_turn(f, prev_z, z, prev_f, fz, 0, &ok);
      if (!ok) return -1;
      prev_z = z;
      prev_f = fz;
    }
  }
  return static_cast<int>(std::lround(total_turn / (2.0 * kPi)));
}

cplx find_root_in_box(const AnalyticFn& fn, cplx center, double radius,
                      double tol, double scale) {
  double x0 = center.real() - radius, x1 = center.real() + radius;
  double y0 = center.imag() - radius, y1 = center.imag() + radius;
  int count = winding_number(fn.f, x0, x1, y0, y1);
  if (count <= 0)
    throw NonConvergence(-1, "argument-principle search: no zero in box");

  // Bisect (slightly off-centre so zeros rarely land on a cut) until the
  // box is small, then polish with Newton from its midpoint.
  while (std::max(x1 - x0, y1 - y0) > 1e-4) {
    bool split_x = (x1 - x0) >= (y1 - y0);
    double cut = split_x ? x0 + 0.5003 * (x1 - x0) : y0 + 0.5003 * (y1 - y0);
    int left;
    if (split_x)
      left = winding_number(fn.f, x0, cut, y0, y1);
    else
      left = winding_number(fn.f, x0, x1, y0, cut);
    if (left == -1) {  // boundary touched a zero; nudge the cut
      cut = split_x ? x0 + 0.47 * (x1 - x0) : y0 + 0.47 * (y1 - y0);
      left = split_x ? winding_number(fn.f, x0, cut, y0, y1)
                     : winding_number(fn.f, x0, x1, y0, cut);
    }
    if (left >= 1) {
      (split_x ? x1 : y1) = cut;
    } else {
      (split_x ? x0 : y0) = cut;
    }
  }
  cplx z(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  for (int it = 0; it < 60; ++it) {
    cplx fv = fn.f(z);
    if (std::abs(fv) <= tol * scale) return z;
    cplx dv = fn.df(z);
    if (std::abs(dv) == 0.0) break;
    cplx step = fv / dv;
    if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
    z -= step;
  }
  cplx fv = fn.f(z);
  if (std::abs(fv) <= tol * scale) return z;
  throw NonConvergence(-1, "argument-principle search: polish failed");
}

namespace {

// Subdivides a box with a known winding count. A cut that lands on (or too
// near) a zero makes the child windings fail or disagree with the parent;
// those cuts are retried at different fractions, so boxes never overlap
// and every zero is counted exactly once.
void collect_roots(const AnalyticFn& fn, double x0, double x1, double y0,
                   double y1, int count, double tol, double scale, int depth,
                   std::vector<cplx>* out) {
  if (count <= 0) return;
  if ((x1 - x0 < 1e-3 && y1 - y0 < 1e-3) || depth > 70) {
    cplx z(0.5 * (x0 + x1), 0.5 * (y0 + y1));
    for (int it = 0; it < 80; ++it) {
      cplx fv = fn.f(z);
      if (std::abs(fv) <= tol * scale) break;
      cplx dv = fn.df(z);
      if (std::abs(dv) == 0.0) break;
      cplx step = fv / dv;
      if (std::abs(step) > x1 - x0 + y1 - y0) step *= 0.3;
      z -= step;
    }
    for (int c = 0; c < count; ++c) out->push_back(z);
    return;
  }
  const bool split_x = (x1 - x0 >= y1 - y0);
  for (double frac : {0.5003, 0.43, 0.59, 0.35, 0.67}) {
    double cut = split_x ? x0 + frac * (x1 - x0) : y0 + frac * (y1 - y0);
    int cl = split_x ? winding_number(fn.f, x0, cut, y0, y1)
                     : winding_number(fn.f, x0, x1, y0, cut);
    if (cl == -1) continue;
    int cr = split_x ? winding_number(fn.f, cut, x1, y0, y1)
                     : winding_number(fn.f, x0, x1, cut, y1);
    if (cr == -1 || cl + cr != count) continue;
    if (split_x) {
      collect_roots(fn, x0, cut, y0, y1, cl, tol, scale, depth + 1, out);
      collect_roots(fn, cut, x1, y0, y1, cr, tol, scale, depth + 1, out);
    } else {
      collect_roots(fn, x0, x1, y0, cut, cl, tol, scale, depth + 1, out);
      collect_roots(fn, x0, x1, cut, y1, cr, tol, scale, depth + 1, out);
    }
    return;
  }
  throw NonConvergence(-1, "all_roots_in_box: no clean cut found");
}

}  // namespace

std::vector<cplx> all_roots_in_box(const AnalyticFn& fn, double x0, double x1,
                                   double y0, double y1, double tol,
                                   double scale) {
  std::vector<cplx> out;
  int count = -1;
  // Boundary zero at the top level: retry with slightly dilated boxes.
  for (double grow : {0.0, 0.0041, 0.0097}) {
    double dx = grow * (x1 - x0), dy = grow * (y1 - y0);
    count = winding_number(fn.f, x0 - dx, x1 + dx, y0 - dy, y1 + dy);
    if (count != -1) {
      collect_roots(fn, x0 - dx, x1 + dx, y0 - dy, y1 + dy, count, tol, scale,
                    0, &out);
      return out;
    }
  }
  throw NonConvergence(-1, "all_roots_in_box: boundary winding failed");
}

cplx newton_root(const AnalyticFn& fn, cplx seed, const NewtonOptions& opt) {
  cplx z = seed;
  cplx best = seed;
  double best_abs = std::numeric_limits<double>::infinity();
  bool diverged = false;
  for (int it = 0; it < opt.max_iter; ++it) {
    cplx fv = fn.f(z);
    double afv = std::abs(fv);
    if (!std::isfinite(afv)) {
      diverged = true;
      break;
    }
    if (afv < best_abs) {
      best_abs = afv;
      best = z;
    }
    if (afv <= opt.tol * opt.scale) return z;
    cplx dv = fn.df(z);
    if (std::abs(dv) == 0.0) {
      diverged = true;
      break;
    }
    z -= fv / dv;
    if (std::abs(z - seed) > 50.0 * (1.0 + std::abs(seed))) {
      diverged = true;
      break;
    }
  }
  if (!diverged && best_abs <= opt.tol * opt.scale) return best;
  if (!opt.allow_fallback)
    throw NonConvergence(-1, "newton_root: no convergence");
  return find_root_in_box(fn, seed, opt.fallback_radius, opt.tol, opt.scale);
}

std::vector<cplx> solve_triangular_volterra(
    const std::function<cplx(double, double)>& kernel,
    const std::vector<cplx>& rhs, const Grid& grid, int node_begin) {
  const int n = static_cast<int>(rhs.size());
  const int m = grid.m();
  if (node_begin + n - 1 != m)
    throw DomainError("solve_triangular_volterra: rhs must end at node m");
  const double h = grid.h();
  std::vector<cplx> u(n);

  // u_k (1 + h Q(x_k,x_k)/2) = rhs_k - h sum_{l>k} c_l Q(x_k,x_l) u_l,
  // trapezoid weights c_l = 1 inside, 1/2 at the endpoints. The last row
  // integrates over the empty interval [pi, pi], so u_{m} = rhs_{m}.
  u[n - 1] = rhs[n - 1];
  for (int k = n - 2; k >= 0; --k) {
    double xk = grid.node(node_begin + k);
    cplx acc = rhs[k];
    for (int l = k + 1; l < n; ++l) {
      double w = (l == n - 1) ? 0.5 : 1.0;
      acc -= h * w * kernel(xk, grid.node(node_begin + l)) * u[l];
    }
    cplx diag = 1.0 + 0.5 * h * kernel(xk, xk);
    if (std::abs(diag) < 1e-12)
      throw Error("solve_triangular_volterra: degenerate diagonal");
    u[k] = acc / diag;
  }
  return u;
}

TailDiagnostic l2_tail_diagnostic(const std::vector<cplx>& seq) {
  if (seq.size() < 16)
    throw DomainError("l2_tail_diagnostic: need at least 16 entries");
  TailDiagnostic out;
  out.partial_norms.resize(seq.size());
  double acc = 0.0;
  for (size_t i = 0; i < seq.size(); ++i) {
    acc += std::norm(seq[i]);
    out.partial_norms[i] = acc;
  }
  double total = out.partial_norms.back();
  double before_tail = out.partial_norms[seq.size() - seq.size() / 4 - 1];
  out.stabilized = (total == 0.0) || (total - before_tail) < 0.05 * total;
  return out;
}

}  // namespace specdelay
