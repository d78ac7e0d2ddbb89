#ifndef SPECDELAY_NUMERICS_HPP
#define SPECDELAY_NUMERICS_HPP

#include <functional>
#include <vector>

#include "specdelay/grid_fn.hpp"
#include "specdelay/types.hpp"

namespace specdelay {

enum class QuadKind { trapezoid, simpson };

/// Composite quadrature rule bound to a grid. Trapezoid matches the
/// piecewise-linear data model; Simpson is available for smooth integrands
/// on even node ranges.
struct QuadratureRule {
  QuadKind kind = QuadKind::trapezoid;
  Grid grid{16};
};

/// Integral of a node-sampled function over [lo, hi] in [0, pi]. Non-node
/// endpoints contribute partial cells integrated against the linear
/// interpolant. Requires lo <= hi.
cplx integrate(const std::vector<cplx>& values, double lo, double hi,
               const QuadratureRule& rule);

/// sin(z)/z, series below |z| = 0.25. Even.
cplx sinc(cplx z);

/// (sin z - z cos z)/z^2, series below |z| = 0.25. Odd; equals -d/dz sinc(z).
cplx g2(cplx z);

/// (sin z - z cos z)/z^3. Even, value 1/3 at z = 0.
cplx g2_over_z(cplx z);

/// Integral over [0, pi] of f(x) * cos(rho x) dx with f piecewise linear:
/// each cell is integrated in closed form, so there is no oscillatory
/// quadrature error even when rho beats the grid resolution.
cplx integrate_against_cos(const PiecewiseGridFn& f, cplx rho);

/// Integral over [0, pi] of f(x) * sin(rho x)/rho dx, closed form per cell.
/// Finite at rho = 0 (limit integrand x f(x)).
cplx integrate_against_sin_over_rho(const PiecewiseGridFn& f, cplx rho);

/// d/drho of the two oscillatory integrals above, by node-level trapezoid
/// of the differentiated integrand. Used only to steer Newton; root
/// accuracy is certified on the exact-cell values.
cplx integrate_against_cos_drho(const PiecewiseGridFn& f, cplx rho);
cplx integrate_against_sin_over_rho_drho(const PiecewiseGridFn& f, cplx rho);

/// An analytic function together with its derivative.
struct AnalyticFn {
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
};

struct NewtonOptions {
  double tol = 1e-12;        // accept when |f| <= tol * scale
  double scale = 1.0;        // caller-provided magnitude scale
  int max_iter = 60;
  double fallback_radius = 0.5;  // argument-principle disk around the seed
  bool allow_fallback = true;
};

/// Number of zeros of f inside the rectangle [x0,x1]x[y0,y1], by winding of
/// arg f along the boundary. Sampling is refined until the phase increment
/// per step is small. Returns -1 if f nearly vanishes on the boundary.
int winding_number(const std::function<cplx(cplx)>& f, double x0, double x1,
                   double y0, double y1);

/// Locates one zero of f inside the square of half-width `radius` centred
/// at `center` by winding-number bisection followed by Newton polish.
/// Throws NonConvergence(-1) if the region contains no zero.
cplx find_root_in_box(const AnalyticFn& fn, cplx center, double radius,
                      double tol, double scale);

/// Every zero of f in the rectangle [x0,x1]x[y0,y1], with multiplicity
/// (repeated entries), by winding-number subdivision. Needed where seeded
/// iteration cannot be trusted: low eigenvalue pairs may leave the real
/// axis even for real potentials.
std::vector<cplx> all_roots_in_box(const AnalyticFn& fn, double x0, double x1,
                                   double y0, double y1, double tol,
                                   double scale);

/// Complex Newton iteration from `seed`, with an argument-principle
/// bisection fallback in a box around the seed when Newton fails.
cplx newton_root(const AnalyticFn& fn, cplx seed, const NewtonOptions& opt);

/// Solves u(x) + integral_x^pi Q(x,t) u(t) dt = rhs(x) on the node range
/// [node_begin, m] by trapezoid-Nystrom discretization and right-to-left
/// backward substitution. rhs[i] corresponds to node node_begin + i.
std::vector<cplx> solve_triangular_volterra(
    const std::function<cplx(double, double)>& kernel,
    const std::vector<cplx>& rhs, const Grid& grid, int node_begin);

struct TailDiagnostic {
  std::vector<double> partial_norms;  // cumulative sum of |kappa_n|^2
  bool stabilized = false;            // last quarter adds < 5% of the total
};

/// Cumulative l2 diagnostics of a residual sequence (Eq.-style square
/// summability rendered at finite length).
TailDiagnostic l2_tail_diagnostic(const std::vector<cplx>& seq);

}  // namespace specdelay

#endif  // SPECDELAY_NUMERICS_HPP
