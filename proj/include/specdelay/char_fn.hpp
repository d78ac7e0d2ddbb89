#ifndef SPECDELAY_CHAR_FN_HPP
#define SPECDELAY_CHAR_FN_HPP

#include "specdelay/kernels.hpp"
#include "specdelay/numerics.hpp"

namespace specdelay {

/// Evaluates the characteristic functions
///   Delta_0(l) = cos(rho pi) + omega sin(rho(pi-a))/rho
///                + int_0^pi w0(x) sin(rho x)/rho dx,
///   Delta_1(l) = -rho sin(rho pi) + omega cos(rho(pi-a))
///                + int_0^pi w1(x) cos(rho x) dx,
/// with rho^2 = lambda. Every term is an even function of rho, and rho is
/// canonicalized internally, so evaluation is branch-independent down to
/// the last bit. The w-integrals are computed in closed form per grid cell,
/// which keeps them exact for arbitrarily large |rho|.
class CharFnEvaluator {
public:
  explicit CharFnEvaluator(CharFnModel model) : model_(std::move(model)) {}

  const CharFnModel& model() const { return model_; }

  cplx eval(int j, cplx lambda) const { return eval_at_rho(j, rho_of(lambda)); }
  cplx eval_at_rho(int j, cplx rho) const;

  /// d/drho of eval_at_rho, consistent with its internal canonicalization.
  cplx deriv_at_rho(int j, cplx rho) const;

private:
  CharFnModel model_;
};

/// eval via a one-shot evaluator; convenience for tests and simple callers.
inline cplx eval_char_fn(int j, cplx lambda, const CharFnModel& model) {
  return CharFnEvaluator(model).eval(j, lambda);
}

struct SpectrumOptions {
  double tol_root = 1e-12;     // Newton stop: |Delta| <= tol * scale
  double certify_tol = 1e-9;   // accept root only if |Delta| <= this * max(1,|lambda|)
  double merge_tol = 1e-6;     // rho distance below which roots merge
  int threads = 1;
};

/// First n_max eigenvalues of B_j, found by Newton on rho seeded with the
/// eigenvalue asymptotics, with an argument-principle fallback in the disk
/// of radius 1/2 around each seed. Roots are sorted by real part; clusters
/// closer than merge_tol in rho are averaged and reported as multiple.
Spectrum compute_spectrum(int j, const CharFnModel& model, int n_max,
                          const SpectrumOptions& opt = {});

/// Asymptotic seed rho for eigenvalue n of problem B_j.
cplx spectrum_seed(int j, int n, cplx omega, double a);

/// C^{(j)}(pi, lambda) of the cosine-type fundamental solution, from the
/// differentiated transformation-operator representations. Used by the
/// characteristic-function identity checks.
cplx eval_cosine_solution_at_pi(int j, cplx lambda, const PotentialPair& pot);

}  // namespace specdelay

#endif  // SPECDELAY_CHAR_FN_HPP
