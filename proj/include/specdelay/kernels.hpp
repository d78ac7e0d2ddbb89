#ifndef SPECDELAY_KERNELS_HPP
#define SPECDELAY_KERNELS_HPP

#include "specdelay/potential.hpp"

namespace specdelay {

/// Transformation-operator kernel of the sine solution:
/// P(x,t) = 1/2 * int_{(a+t)/2}^{x+(a-t)/2} qplus. Requires a <= t <= x <= pi.
cplx kernel_P(double x, double t, const PotentialPair& pot);

/// Kernel of the cosine solution:
/// K(x,t) = 1/2 * int_a^{(a+t)/2} qplus + 1/2 * int_a^{x+(a-t)/2} qplus.
cplx kernel_K(double x, double t, const PotentialPair& pot);

/// Differentiated kernels K_j(x,t) = 1/4 (qplus((a+t)/2)
/// - (-1)^j qplus(x+(a-t)/2)), j in {0,1}; point values by interpolation.
cplx kernel_Kj(int j, double x, double t, const PotentialPair& pot);

/// Running half-integral omega(x) = 1/2 * int_a^x qplus; omega(pi) is the
/// leading spectral perturbation constant.
cplx omega_of_x(double x, const PotentialPair& pot);

/// The triple (omega, w0, w1) that parameterizes both characteristic
/// functions. The w's are stored with their jump at pi - a resolved by
/// one-sided samples.
struct CharFnModel {
  Grid grid{16};
  Delay a{kPi / 2.0};
  int a_node = 0;
  cplx omega;
  PiecewiseGridFn w0, w1;  // break node at m - a_node
};

/// Builds (omega, w0, w1) from the split potential. On (pi-a, pi) both w's
/// equal qminus(pi - x); on (0, pi-a) they follow the double-integral
/// representations, with inner integrals read off a precomputed
/// antiderivative of qplus.
CharFnModel build_w_functions(const PotentialPair& pot);

}  // namespace specdelay

#endif  // SPECDELAY_KERNELS_HPP
