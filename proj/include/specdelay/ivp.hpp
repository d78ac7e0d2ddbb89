#ifndef SPECDELAY_IVP_HPP
#define SPECDELAY_IVP_HPP

#include <optional>

#include "specdelay/potential.hpp"

namespace specdelay {

struct IvpSolution {
  cplx y_end;   // y(pi)
  cplx dy_end;  // y'(pi)
  std::optional<std::vector<cplx>> trajectory;  // y at the grid nodes
};

struct IvpOptions {
  double tol = 1e-8;   // step-halving agreement target
  int max_halvings = 9;
  bool keep_trajectory = false;
};

/// Integrates -y'' + qplus(x) y(x-a) + qminus(x) y(0) = lambda y on
/// [0, pi] with y(0) = 1, y'(0) = 0 and the constant initial function
/// y = y(0) on (-a, 0]. Because a >= pi/2, the delayed argument stays in
/// the first step, so the second step is integrated as a coupled
/// non-delayed system with a synchronized copy of the first-segment
/// solution. Returns y(pi) and y'(pi), which equal Delta_0 and Delta_1.
IvpSolution solve_ivp_method_of_steps(const PotentialPair& pot, cplx lambda,
                                      const IvpOptions& opt = {});

/// z(pi, lambda; qminus) and z'(pi, lambda; qminus): the Cauchy solution of
/// the non-homogeneous equation with free term qminus and zero initial
/// conditions, by direct quadrature of its Green-representation at x = pi.
std::pair<cplx, cplx> eval_cauchy_z(cplx lambda, const PotentialPair& pot);

}  // namespace specdelay

#endif  // SPECDELAY_IVP_HPP
