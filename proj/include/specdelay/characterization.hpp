#ifndef SPECDELAY_CHARACTERIZATION_HPP
#define SPECDELAY_CHARACTERIZATION_HPP

#include <optional>

#include "specdelay/products.hpp"

namespace specdelay {

struct AsymptoticsFit {
  cplx omega_fit;
  std::vector<cplx> kappa_residuals;  // kappa_n, n = 1..N-1
};

/// Least-squares fit of omega on the eigenvalue asymptotics
/// rho_n = n + (1-j)/2 + omega cos((n+(1-j)/2) a)/(pi n) + kappa_n/n over
/// the upper half of the indices; returns the fitted omega and the full
/// residual sequence kappa_n. Throws IllConditionedFit when the fit window
/// carries no cosine signal.
AsymptoticsFit check_asymptotics(const Spectrum& spectrum, Delay a);

/// Residual of the product identity lambda_{0,1} prod lambda_{n,1}/n^2
/// = 2 omega/pi (the extra Neumann-side characterization constraint),
/// computed as Delta_1(0)/pi - 2 omega/pi from the regularized product.
cplx check_A4(const Spectrum& spectrum1, cplx omega);

/// theta_j of the overdetermination condition, from the regularized
/// products: theta_0 = rho(Delta_0 - cos rho pi) - omega sin rho(pi-a),
/// theta_1 = Delta_1 + rho sin rho pi - omega cos rho(pi-a). Both are
/// assembled cancellation-free from the perturbation ratio product.
cplx theta_from_product(const ProductCharFn& prod, cplx omega, Delay a,
                        cplx rho);

/// Samples |i theta_0(-ir) - theta_1(-ir)| e^{-(pi-a) r} at the given r
/// values. For spectra of one and the same potential the sequence trends
/// down; omega is fitted from spectrum1 internally.
std::vector<double> check_overdetermination(const Spectrum& spectrum0,
                                            const Spectrum& spectrum1,
                                            Delay a,
                                            const std::vector<double>& r_samples);

/// Log-magnitude growth rate of theta_j along the negative imaginary rho
/// axis, fitted over the upper half of the samples: an exponential-type
/// estimate to compare with pi - a. A theta that vanishes at every sample
/// reports type 0.
double estimate_exponential_type(const Spectrum& spectrum, int j, cplx omega,
                                 Delay a, const std::vector<double>& r_samples);

/// Aggregated diagnostics for the necessary/characterizing conditions.
struct CharacterizationReport {
  cplx omega_fit0 = 0.0;               // from spectrum0, when present
  cplx omega_fit = 0.0;                // from spectrum1 (drives A4, thetas)
  std::vector<cplx> kappa_residuals;   // spectrum1 residuals
  bool kappa_stabilized = false;
  cplx a4_residual = 0.0;
  std::vector<double> char_decay;      // empty when spectrum0 is absent
  bool char_decreasing = false;
  double exp_type0 = 0.0, exp_type1 = 0.0;
  std::vector<double> r_samples;
};

/// Runs every diagnostic that the supplied spectra allow. spectrum0 is
/// optional: asymptotics and (A4) need only spectrum1, the decay condition
/// and theta_0's type need both.
CharacterizationReport characterize(const std::optional<Spectrum>& spectrum0,
                                    const Spectrum& spectrum1, Delay a,
                                    std::vector<double> r_samples = {});

}  // namespace specdelay

#endif  // SPECDELAY_CHARACTERIZATION_HPP
