#ifndef SPECDELAY_POTENTIAL_HPP
#define SPECDELAY_POTENTIAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "specdelay/grid_fn.hpp"
#include "specdelay/types.hpp"

namespace specdelay {

/// The potential split at the delay: qminus lives on (0, a), qplus on
/// (a, pi). The delay is snapped to a grid node; the snapped node carries
/// one-sided samples on both pieces so that integrals ending at a keep full
/// trapezoid accuracy.
class PotentialPair {
public:
  PotentialPair(const Grid& grid, Delay requested_a, PiecewiseGridFn q);

  static PotentialPair from_pieces(const Grid& grid, Delay a,
                                   const std::function<cplx(double)>& fminus,
                                   const std::function<cplx(double)>& fplus);

  const Grid& grid() const { return q_.grid(); }
  Delay delay() const { return a_; }
  double a() const { return a_.value(); }
  int a_node() const { return q_.break_node(); }
  double snap_distance() const { return snap_distance_; }

  /// qminus as a node array on [0, a] (indices 0..a_node).
  const std::vector<cplx>& qminus_nodes() const { return q_.lo(); }
  /// qplus as a node array on [a, pi] (indices 0..m-a_node).
  const std::vector<cplx>& qplus_nodes() const { return q_.hi(); }

  /// Zero-extended pointwise values.
  cplx qminus_at(double x) const {
    return x <= a() ? q_.value_lo(x) : cplx(0.0);
  }
  cplx qplus_at(double x) const {
    return x >= a() ? q_.value_hi(x) : cplx(0.0);
  }

  const PiecewiseGridFn& split_fn() const { return q_; }
  const Prefix& qminus_prefix() const { return pminus_; }
  const Prefix& qplus_prefix() const { return pplus_; }

  /// L2 norm of q over (0, pi), piecewise trapezoid.
  double l2_norm() const;

  /// Single-array export; the snapped node gets the mean of its one-sided
  /// samples.
  std::vector<cplx> to_nodes() const;

private:
  Delay a_;
  double snap_distance_ = 0.0;
  PiecewiseGridFn q_;
  Prefix pminus_, pplus_;
};

/// Splits a node-sampled potential at the (snapped) delay. The snapped node
/// receives the shared sample on both sides.
PotentialPair split_potential(const std::vector<cplx>& q_nodes, Delay a,
                              const Grid& grid);

/// Compiled-in test potentials: "zero", "step-qplus", "step-qminus",
/// "smooth".
PotentialPair builtin_potential(const std::string& name, const Grid& grid);

/// Names of the built-in potentials, in a stable order.
const std::vector<std::string>& builtin_potential_names();

/// Deterministic random test potential: low-order trigonometric pieces on
/// both sides of the delay, scaled to roughly unit L2 size.
PotentialPair random_potential(unsigned seed, Delay a, const Grid& grid,
                               bool complex_valued = true);

/// Relative L2 distance between two potentials on the same grid and delay,
/// integrated piecewise over (0, a) and (a, pi).
double relative_l2_error(const PotentialPair& approx,
                         const PotentialPair& exact);

}  // namespace specdelay

#endif  // SPECDELAY_POTENTIAL_HPP
