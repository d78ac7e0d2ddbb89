#include "specdelay/inverse.hpp"

#include <cmath>

#include "specdelay/log.hpp"
#include "specdelay/numerics.hpp"

namespace specdelay {

cplx estimate_omega_ratio(const Spectrum& spectrum1, Delay a) {
  if (spectrum1.j != 1)
    throw DomainError("estimate_omega_ratio: needs the j = 1 spectrum");
  if (spectrum1.size() < 16)
    throw DomainError("estimate_omega_ratio: needs at least 16 eigenvalues");
  std::vector<cplx> selected;
  for (int n = 1; n < spectrum1.size(); ++n) {
    double c = std::cos(n * a.value());
    if (std::abs(c) < 0.3) continue;
    cplx rho = rho_of(spectrum1.lambdas[n]);
    selected.push_back(kPi * double(n) * (rho - double(n)) / c);
  }
  if (selected.size() < 4)
    throw InsufficientIndices(
        "estimate_omega_ratio: fewer than 4 indices pass |cos(n a)| >= 0.3");
  size_t tail = std::max<size_t>(1, selected.size() / 4);
  cplx acc = 0.0;
  for (size_t i = selected.size() - tail; i < selected.size(); ++i)
    acc += selected[i];
  return acc / static_cast<double>(tail);
}

cplx estimate_omega_sample(const ProductCharFn& prod1, Delay a, int n_omega) {
  if (prod1.j() != 1)
    throw DomainError("estimate_omega_sample: needs the j = 1 product");
  if (n_omega < 2)
    throw DomainError("estimate_omega_sample: n_omega must be >= 2");
  std::vector<cplx> v(n_omega + 1);
  for (int n = 1; n <= n_omega; ++n) {
    double xi = 2.0 * kPi * n / (kPi - a.value());
    v[n] = prod1.eval(cplx(xi * xi)) + xi * std::sin(xi * kPi);
  }
  // Linear fit v_n ~ omega + c/n over the last half of the samples.
  int lo = std::max(1, n_omega / 2);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  cplx t0 = 0.0, t1 = 0.0;
  for (int n = lo; n <= n_omega; ++n) {
    double x = 1.0 / n;
    s0 += 1.0;
    s1 += x;
    s2 += x * x;
    t0 += v[n];
    t1 += x * v[n];
  }
  double det = s0 * s2 - s1 * s1;
  if (std::abs(det) < 1e-14) return t0 / s0;
  return (s2 * t0 - s1 * t1) / det;  // intercept at 1/n -> 0
}

cplx estimate_omega_sample(const Spectrum& spectrum1, Delay a, int n_omega) {
  return estimate_omega_sample(ProductCharFn(spectrum1), a, n_omega);
}

std::pair<std::vector<cplx>, std::vector<cplx>> fourier_coefficients(
    const ProductCharFn& prod0, const ProductCharFn& prod1, cplx omega,
    Delay a, int n_max) {
  if (prod0.j() != 0 || prod1.j() != 1)
    throw DomainError("fourier_coefficients: products must carry j = 0, 1");
  if (n_max < 1) throw DomainError("fourier_coefficients: n_max must be >= 1");
  std::vector<cplx> aseq(n_max), bseq(n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    cplx lam(double(n) * double(n));
    aseq[n - 1] = double(n) * (prod0.eval(lam) - sign) +
                  omega * sign * std::sin(n * a.value());
    bseq[n] = prod1.eval(lam) - omega * sign * std::cos(n * a.value());
  }
  bseq[0] = prod1.eval(cplx(0.0)) - omega;
  return {std::move(aseq), std::move(bseq)};
}

std::pair<std::vector<cplx>, std::vector<cplx>> synthesize_w(
    const std::vector<cplx>& aseq, const std::vector<cplx>& bseq,
    const Grid& grid, bool fejer) {
  const int m = grid.m();
  const int n_sin = static_cast<int>(aseq.size());
  const int n_cos = static_cast<int>(bseq.size()) - 1;
  std::vector<cplx> w0(m + 1, 0.0), w1(m + 1, 0.0);
  auto taper = [&](int n, int n_top) {
    return fejer ? 1.0 - double(n) / double(n_top + 1) : 1.0;
  };
  for (int k = 0; k <= m; ++k) {
    const double x = grid.node(k);
    cplx s = 0.0;
    for (int n = 1; n <= n_sin; ++n)
      s += taper(n, n_sin) * aseq[n - 1] * std::sin(n * x);
    w0[k] = 2.0 / kPi * s;
    cplx c = bseq[0] / kPi;
    for (int n = 1; n <= n_cos; ++n)
      c += 2.0 / kPi * taper(n, n_cos) * bseq[n] * std::cos(n * x);
    w1[k] = c;
  }
  return {std::move(w0), std::move(w1)};
}

QminusExtraction extract_qminus(const std::vector<cplx>& w0,
                                const std::vector<cplx>& w1, Delay a,
                                const Grid& grid) {
  if (static_cast<int>(w0.size()) != grid.size() || w0.size() != w1.size())
    throw DomainError("extract_qminus: w arrays must live on the grid");
  const int m = grid.m();
  const int ia = snap_delay(a, grid).node;
  QminusExtraction out;
  out.qminus.resize(ia + 1);
  std::vector<cplx> disc(grid.size(), 0.0);
  for (int k = 0; k <= ia; ++k) {
    out.qminus[k] = 0.5 * (w0[m - k] + w1[m - k]);
    disc[k] = std::norm(w0[m - k] - w1[m - k]);
  }
  QuadratureRule rule{QuadKind::trapezoid, grid};
  out.consistency =
      std::sqrt(std::abs(integrate(disc, 0.0, grid.node(ia), rule).real()));
  return out;
}

VolterraSystem::VolterraSystem(std::vector<cplx> W, Prefix qminus_prefix,
                               const Grid& grid, int a_node)
    : W_(std::move(W)), pminus_(std::move(qminus_prefix)), grid_(grid),
      a_node_(a_node) {
  if (static_cast<int>(W_.size()) != grid_.m() - a_node_ + 1)
    throw DomainError("VolterraSystem: W must cover nodes a..pi");
}

cplx VolterraSystem::Q(double x, double t) const {
  const double av = a();
  if (t >= 2.0 * x - av) return 2.0 * pminus_.at(2.0 * (x - av));
  return 2.0 * pminus_.at(2.0 * (t - x));
}

VolterraSystem assemble_volterra(const std::vector<cplx>& w0,
                                 const std::vector<cplx>& w1,
                                 const std::vector<cplx>& qminus, Delay a,
                                 const Grid& grid) {
  const int m = grid.m();
  const int ia = snap_delay(a, grid).node;
  if (static_cast<int>(w0.size()) != grid.size() || w0.size() != w1.size())
    throw DomainError("assemble_volterra: w arrays must live on the grid");
  if (static_cast<int>(qminus.size()) != ia + 1)
    throw DomainError("assemble_volterra: qminus must cover nodes 0..a");

  // W(x_k): the reflected arguments pi+a-2x and 2x-pi-a are exact grid
  // nodes, so no interpolation enters.
  std::vector<cplx> W(m - ia + 1);
  for (int k = ia; k <= m; ++k) {
    int d = m + ia - 2 * k;
    if (d >= 0)
      W[k - ia] = 2.0 * (w1[d] + w0[d]);
    else
      W[k - ia] = 2.0 * (w1[-d] - w0[-d]);
  }
  return VolterraSystem(std::move(W), Prefix(grid, 0, ia, qminus), grid, ia);
}

VolterraSolution solve_volterra(const VolterraSystem& system) {
  const Grid& grid = system.grid();
  const int ia = system.a_node();
  auto kernel = [&](double x, double t) { return system.Q(x, t); };
  VolterraSolution out;
  out.qplus = solve_triangular_volterra(kernel, system.W(), grid, ia);

  // Residual of the discretized equation the sweep just solved.
  const double h = grid.h();
  const int n = static_cast<int>(out.qplus.size());
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx acc = out.qplus[k];
    for (int l = k; l < n && k < n - 1; ++l) {
      double w = (l == k || l == n - 1) ? 0.5 : 1.0;
      acc += h * w * system.Q(grid.node(ia + k), grid.node(ia + l)) *
             out.qplus[l];
    }
    worst = std::max(worst, std::abs(acc - system.W()[k]));
  }
  out.residual = worst;
  return out;
}

InverseResult run_algorithm1(const Spectrum& spectrum0,
                             const Spectrum& spectrum1, Delay a,
                             const Grid& grid, const InverseOptions& opt) {
  if (spectrum0.j != 0 || spectrum1.j != 1)
    throw DomainError("run_algorithm1: expects spectra with j = 0 and j = 1");
  if (spectrum0.size() != spectrum1.size())
    throw DomainError("run_algorithm1: spectra must have equal length");
  const int N = spectrum0.size();
  const int n_max = opt.n_max > 0 ? opt.n_max : N - 1;
  if (grid.m() < 4 * n_max)
    throw DomainError("run_algorithm1: grid must satisfy m >= 4 n_max");
  const SnappedDelay snap = snap_delay(a, grid);

  // (i)-(ii) products and omega. The ratio estimate seeds the synthetic
  // product tails; the configured estimator provides the pipeline omega.
  cplx omega_ratio = 0.0;
  bool have_ratio = false;
  try {
    omega_ratio = estimate_omega_ratio(spectrum1, snap.a);
    have_ratio = true;
  } catch (const InsufficientIndices& e) {
    log_warn(std::string("run_algorithm1: ") + e.what());
  }
  ProductCharFn prod0 =
      opt.tail_factor > 1
          ? ProductCharFn(spectrum0, omega_ratio, opt.tail_factor)
          : ProductCharFn(spectrum0);
  ProductCharFn prod1 =
      opt.tail_factor > 1
          ? ProductCharFn(spectrum1, omega_ratio, opt.tail_factor)
          : ProductCharFn(spectrum1);
  // The sampling frequencies must scale with the data horizon, or the
  // estimator error stalls and its Fourier image stops shrinking with N.
  const int n_omega = opt.n_omega > 0 ? opt.n_omega : std::max(8, N / 8);
  cplx omega_sample = estimate_omega_sample(prod1, snap.a, n_omega);

  cplx omega, omega_alt;
  if (opt.omega_method == OmegaMethod::ratio) {
    if (!have_ratio)
      throw InsufficientIndices(
          "run_algorithm1: ratio estimator requested but unavailable");
    omega = omega_ratio;
    omega_alt = omega_sample;
  } else {
    omega = omega_sample;
    omega_alt = have_ratio ? omega_ratio : omega_sample;
  }

  // (iii) Fourier synthesis of the w's.
  auto [aseq, bseq] = fourier_coefficients(prod0, prod1, omega, snap.a, n_max);
  auto [w0, w1] = synthesize_w(aseq, bseq, grid, opt.fejer);

  // (iv) qminus read-off. The partial Fourier sums take half-jump values
  // exactly at the delay node and force zero at the sine-series endpoint;
  // the four affected one-sided samples (qminus at 0 and a, qplus at a and
  // pi) are replaced by extrapolation from the clean interior.
  auto repair_front = [](std::vector<cplx>& v) {
    if (v.size() >= 10) v[0] = 2.0 * v[4] - v[8];
  };
  auto repair_back = [](std::vector<cplx>& v) {
    size_t n = v.size();
    if (n >= 10) v[n - 1] = 2.0 * v[n - 5] - v[n - 9];
  };
  QminusExtraction qm = extract_qminus(w0, w1, snap.a, grid);
  repair_front(qm.qminus);
  repair_back(qm.qminus);

  // (v) Volterra equation for qplus.
  VolterraSystem system = assemble_volterra(w0, w1, qm.qminus, snap.a, grid);
  VolterraSolution vs = solve_volterra(system);
  repair_front(vs.qplus);
  repair_back(vs.qplus);

  // (vi) assemble q = qminus + qplus.
  PotentialPair q(grid, snap.a,
                  PiecewiseGridFn(grid, snap.node, qm.qminus, vs.qplus));
  InverseDiagnostics diag{omega, omega_alt, qm.consistency, vs.residual};
  return InverseResult{std::move(q), diag};
}

}  // namespace specdelay
