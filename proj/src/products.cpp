#include "specdelay/products.hpp"

#include <cmath>

#include "specdelay/log.hpp"
#include "specdelay/numerics.hpp"

namespace specdelay {

ProductCharFn::ProductCharFn(Spectrum spectrum)
    : spectrum_(std::move(spectrum)) {
  if (spectrum_.j != 0 && spectrum_.j != 1)
    throw DomainError("ProductCharFn: j must be 0 or 1");
  if (spectrum_.size() < 2)
    throw DomainError("ProductCharFn: spectrum too short");
  n_ext_ = spectrum_.size();
}

ProductCharFn::ProductCharFn(Spectrum spectrum, cplx tail_omega,
                             int tail_factor)
    : ProductCharFn(std::move(spectrum)) {
  if (tail_factor < 1)
    throw DomainError("ProductCharFn: tail_factor must be >= 1");
  tail_omega_ = tail_omega;
  n_ext_ = spectrum_.size() * tail_factor;
}

cplx ProductCharFn::nth_eigenvalue(int n) const {
  if (n < spectrum_.size()) return spectrum_.lambdas[n];
  const double base = n + 0.5 * (1 - spectrum_.j);
  cplx r = base + tail_omega_ * std::cos(base * spectrum_.delay) /
                      (kPi * static_cast<double>(n));
  return r * r;
}

cplx ProductCharFn::ratio_product(cplx lambda) const {
  const int jstart = (spectrum_.j == 1) ? 1 : 0;
  cplx prod = 1.0;
  for (int n = jstart; n < n_ext_; ++n) {
    double p = pole_rho(n);
    prod *= (nth_eigenvalue(n) - lambda) / (p * p - lambda);
  }
  return prod;
}

cplx ProductCharFn::eval(cplx lambda) const {
  const int j = spectrum_.j;
  const int jstart = (j == 1) ? 1 : 0;
  cplx rho = rho_of(lambda);

  // A pole beyond the extended horizon has no data factor to cancel the
  // closed-form zero; nudge lambda off it.
  long k_near = std::lround(rho.real() - 0.5 * (1 - j));
  if (k_near >= n_ext_ && std::abs(rho - cplx(pole_rho(k_near))) < 1e-8) {
    log_warn("product_char_fn: pole collision beyond horizon, perturbing");
    lambda += 1e-12 * std::max(1.0, std::abs(lambda));
    rho = rho_of(lambda);
  }

  // Factor index whose unperturbed zero sits within 1/2 of rho: its
  // denominator is folded into the closed form by an exact identity, so
  // the removable singularity never forms.
  int paired = -1;
  if (k_near >= jstart && k_near < n_ext_ &&
      std::abs(rho - cplx(pole_rho(k_near))) < 0.5)
    paired = static_cast<int>(k_near);

  cplx prod = 1.0;
  for (int n = jstart; n < n_ext_; ++n) {
    if (n == paired) continue;
    double p = pole_rho(n);
    prod *= (nth_eigenvalue(n) - lambda) / (p * p - lambda);
  }

  if (j == 0) {
    if (paired < 0) return std::cos(rho * kPi) * prod;
    // cos(rho pi)/((k+1/2)^2 - lambda)
    //   = (-1)^k pi sinc((rho-k-1/2) pi)/(k+1/2+rho)
    double sign = (paired % 2 == 0) ? 1.0 : -1.0;
    cplx folded = sign * kPi * sinc((rho - pole_rho(paired)) * kPi) /
                  (pole_rho(paired) + rho);
    return prod * (nth_eigenvalue(paired) - lambda) * folded;
  }

  cplx lead = kPi * (spectrum_.lambdas[0] - lambda);
  if (paired < 0) return lead * prod * sinc(rho * kPi);
  // [sin(rho pi)/(rho pi)]/(k^2 - lambda)
  //   = (-1)^{k+1} sinc((rho-k) pi)/(rho (k+rho))
  double sign = (paired % 2 == 0) ? -1.0 : 1.0;
  cplx folded = sign * sinc((rho - pole_rho(paired)) * kPi) /
                (rho * (pole_rho(paired) + rho));
  return lead * prod * (nth_eigenvalue(paired) - lambda) * folded;
}

cplx ProductCharFn::eval_direct(cplx lambda, int terms) const {
  const int j = spectrum_.j;
  int n_top = std::min(terms, spectrum_.size());
  if (j == 0) {
    cplx prod = 1.0;
    for (int n = 0; n < n_top; ++n) {
      double p = pole_rho(n);
      prod *= (spectrum_.lambdas[n] - lambda) / (p * p);
    }
    return prod;
  }
  cplx prod = kPi * (spectrum_.lambdas[0] - lambda);
  for (int n = 1; n < n_top; ++n)
    prod *= (spectrum_.lambdas[n] - lambda) / cplx(double(n) * double(n));
  return prod;
}

cplx product_char_fn(int j, const Spectrum& spectrum, cplx lambda) {
  if (spectrum.j != j)
    throw DomainError("product_char_fn: spectrum carries a different j");
  return ProductCharFn(spectrum).eval(lambda);
}

}  // namespace specdelay
