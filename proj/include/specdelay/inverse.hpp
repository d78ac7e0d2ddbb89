#ifndef SPECDELAY_INVERSE_HPP
#define SPECDELAY_INVERSE_HPP

#include "specdelay/potential.hpp"
#include "specdelay/products.hpp"

namespace specdelay {

/// Leading coefficient omega from the eigenvalue asymptotics of the j=1
/// spectrum: omega = pi lim n (rho_n - n)/cos(n a) over indices with
/// |cos(n a)| >= 0.3; returns the average of the last quarter of the
/// selected subsequence. Throws InsufficientIndices below 4 usable indices.
cplx estimate_omega_ratio(const Spectrum& spectrum1, Delay a);

/// omega from sampling the product-reconstructed Delta_1 at
/// xi_n = 2 pi n/(pi - a): Delta_1(xi^2) + xi sin(xi pi) -> omega. The last
/// half of the samples is extrapolated linearly in 1/n.
cplx estimate_omega_sample(const ProductCharFn& prod1, Delay a,
                           int n_omega = 8);
cplx estimate_omega_sample(const Spectrum& spectrum1, Delay a,
                           int n_omega = 8);

/// Fourier coefficients of the w-functions:
///   a_n = n(Delta_0(n^2) - (-1)^n) + omega (-1)^n sin(n a), n = 1..n_max
///   b_n = Delta_1(n^2) - omega (-1)^n cos(n a),             n = 0..n_max
/// aseq[i] holds a_{i+1}; bseq[n] holds b_n.
std::pair<std::vector<cplx>, std::vector<cplx>> fourier_coefficients(
    const ProductCharFn& prod0, const ProductCharFn& prod1, cplx omega,
    Delay a, int n_max);

/// Partial Fourier sums on the grid nodes:
///   w0(x) = (2/pi) sum a_n sin nx
///   w1(x) = b_0/pi + (2/pi) sum_{n>=1} b_n cos nx
/// The n = 0 cosine weight is 1/pi (standard cosine-expansion
/// normalization). Optional Fejer smoothing for discontinuous targets.
std::pair<std::vector<cplx>, std::vector<cplx>> synthesize_w(
    const std::vector<cplx>& aseq, const std::vector<cplx>& bseq,
    const Grid& grid, bool fejer = false);

struct QminusExtraction {
  std::vector<cplx> qminus;  // nodes 0..a_node
  double consistency;        // L2(0,a) norm of w0(pi-.) - w1(pi-.)
};

/// Reads qminus(x) = (w0(pi-x) + w1(pi-x))/2 off the synthesized w's and
/// reports how far the two read-offs disagree.
QminusExtraction extract_qminus(const std::vector<cplx>& w0,
                                const std::vector<cplx>& w1, Delay a,
                                const Grid& grid);

/// Right-hand side W and kernel Q of the Volterra equation for qplus.
/// Q depends on qminus only (through its antiderivative); W on the w's only.
class VolterraSystem {
public:
  VolterraSystem(std::vector<cplx> W, Prefix qminus_prefix, const Grid& grid,
                 int a_node);

  const std::vector<cplx>& W() const { return W_; }
  const Grid& grid() const { return grid_; }
  int a_node() const { return a_node_; }
  double a() const { return grid_.node(a_node_); }

  /// Q(x,t) on a < x <= t < pi.
  cplx Q(double x, double t) const;

private:
  std::vector<cplx> W_;  // nodes a_node..m
  Prefix pminus_;
  Grid grid_{16};
  int a_node_;
};

VolterraSystem assemble_volterra(const std::vector<cplx>& w0,
                                 const std::vector<cplx>& w1,
                                 const std::vector<cplx>& qminus, Delay a,
                                 const Grid& grid);

struct VolterraSolution {
  std::vector<cplx> qplus;  // nodes a_node..m
  double residual;          // max norm of the discretized equation residual
};

/// Solves qplus(x) + int_x^pi Q(x,t) qplus(t) dt = W(x) by trapezoid
/// Nystrom discretization with a right-to-left triangular sweep.
VolterraSolution solve_volterra(const VolterraSystem& system);

enum class OmegaMethod { sample, ratio };

struct InverseOptions {
  OmegaMethod omega_method = OmegaMethod::sample;
  bool fejer = false;
  int n_omega = -1;      // samples for the omega limit formula; -1 = N/8
  int tail_factor = 8;   // synthetic product tail multiplier (1 = off)
  int n_max = -1;        // Fourier modes; default N - 1
};

struct InverseDiagnostics {
  cplx omega;              // estimate used by the pipeline
  cplx omega_alt;          // the other estimator, as cross-check
  double qminus_consistency = 0.0;
  double volterra_residual = 0.0;
};

struct InverseResult {
  PotentialPair q;
  InverseDiagnostics diagnostics;
};

/// The full constructive reconstruction from two spectra:
/// (i) regularized products, (ii) omega, (iii) Fourier synthesis of the
/// w's, (iv) qminus read-off, (v) Volterra solve for qplus, (vi) assembly.
InverseResult run_algorithm1(const Spectrum& spectrum0,
                             const Spectrum& spectrum1, Delay a,
                             const Grid& grid,
                             const InverseOptions& opt = {});

}  // namespace specdelay

#endif  // SPECDELAY_INVERSE_HPP
