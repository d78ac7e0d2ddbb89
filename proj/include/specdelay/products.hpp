#ifndef SPECDELAY_PRODUCTS_HPP
#define SPECDELAY_PRODUCTS_HPP

#include "specdelay/types.hpp"

namespace specdelay {

/// Characteristic function rebuilt from a truncated spectrum via its
/// infinite-product representation, regularized against the zero-potential
/// closed forms (cos(rho pi) and sin(rho pi)/(rho pi)) so only perturbation
/// ratios are computed and the tail stays exact:
///   Delta_0 = cos(rho pi)     * prod (lambda_n - l)/((n+1/2)^2 - l)
///   Delta_1 = pi (lambda_0-l) * prod (lambda_n - l)/(n^2 - l)
///             * sin(rho pi)/(rho pi)
/// A factor whose unperturbed zero is within 1/2 of rho in the rho-plane is
/// paired with the closed form through an exact trig identity, so removable
/// singularities (including Delta_1 at the integers) evaluate by limit.
///
/// Optionally the data horizon is extended with synthetic eigenvalues from
/// the first-order asymptotics (requires an omega estimate); this shifts
/// the truncation error from the oscillatory omega term to the l2-remainder
/// and is used by the reconstruction pipeline.
class ProductCharFn {
public:
  /// Plain truncated product over the given spectrum (no synthetic tail).
  explicit ProductCharFn(Spectrum spectrum);

  /// Product with a synthetic asymptotic tail up to tail_factor * N terms.
  ProductCharFn(Spectrum spectrum, cplx tail_omega, int tail_factor);

  int j() const { return spectrum_.j; }
  int horizon() const { return spectrum_.size(); }
  int extended_horizon() const { return n_ext_; }
  const Spectrum& spectrum() const { return spectrum_; }

  /// Regularized evaluation; pole collisions beyond the extended horizon
  /// perturb lambda by 1e-12 * max(1, |lambda|) and warn.
  cplx eval(cplx lambda) const;

  /// The product of perturbation ratios alone (without the closed-form
  /// factor and without the j=1 leading factor). Only meaningful away from
  /// the unperturbed zeros; used by the characterization thetas on the
  /// negative real axis.
  cplx ratio_product(cplx lambda) const;

  /// Unregularized partial product of the defining formula, truncated at
  /// `terms` factors; slow to converge, kept as an independent cross-check.
  cplx eval_direct(cplx lambda, int terms) const;

private:
  cplx nth_eigenvalue(int n) const;  // data for n < N, synthetic beyond
  double pole_rho(int n) const { return n + 0.5 * (1 - spectrum_.j); }

  Spectrum spectrum_;
  cplx tail_omega_ = 0.0;
  int n_ext_ = 0;  // total factors (data + synthetic)
};

/// Spec-level convenience: regularized product of the plain truncated
/// spectrum at one point.
cplx product_char_fn(int j, const Spectrum& spectrum, cplx lambda);

}  // namespace specdelay

#endif  // SPECDELAY_PRODUCTS_HPP
