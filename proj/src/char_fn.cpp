#include "specdelay/char_fn.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace specdelay {

namespace {

// Canonical branch representative: Re rho >= 0, ties broken to Im >= 0.
cplx canonical(cplx rho, double* sign) {
  if (rho.real() < 0.0 ||
      (rho.real() == 0.0 && rho.imag() < 0.0)) {
    if (sign) *sign = -1.0;
    return -rho;
  }
  if (sign) *sign = 1.0;
  return rho;
}

}  // namespace

cplx CharFnEvaluator::eval_at_rho(int j, cplx rho) const {
  rho = canonical(rho, nullptr);
  const double pa = kPi - model_.a.value();
  if (j == 0) {
    return std::cos(rho * kPi) + model_.omega * pa * sinc(rho * pa) +
           integrate_against_sin_over_rho(model_.w0, rho);
  }
  if (j == 1) {
    return -rho * std::sin(rho * kPi) + model_.omega * std::cos(rho * pa) +
           integrate_against_cos(model_.w1, rho);
  }
  throw DomainError("eval_char_fn: j must be 0 or 1");
}

cplx CharFnEvaluator::deriv_at_rho(int j, cplx rho) const {
  double sign = 1.0;
  rho = canonical(rho, &sign);
  const double pa = kPi - model_.a.value();
  cplx d;
  if (j == 0) {
    d = -kPi * std::sin(rho * kPi) - model_.omega * pa * pa * g2(rho * pa) +
        integrate_against_sin_over_rho_drho(model_.w0, rho);
  } else if (j == 1) {
    d = -std::sin(rho * kPi) - rho * kPi * std::cos(rho * kPi) -
        model_.omega * pa * std::sin(rho * pa) +
        integrate_against_cos_drho(model_.w1, rho);
  } else {
    throw DomainError("deriv_at_rho: j must be 0 or 1");
  }
  return sign * d;
}

cplx spectrum_seed(int j, int n, cplx omega, double a) {
  const double base = n + 0.5 * (1 - j);
  if (n == 0) return (j == 0) ? cplx(0.5) : cplx(0.25);
  return base + omega * std::cos(base * a) / (kPi * n);
}

namespace {

// The two lowest eigenvalues need an exhaustive search: they may form a
// complex conjugate pair even for a real potential, which Newton iteration
// from a real seed can never reach. Sweeps the rho-rectangle covering
// slots 0 and 1, pairs the +-rho copies, and returns the lambda values
// (with multiplicity) that do not duplicate already-found higher roots.
std::vector<cplx> low_block_eigenvalues(const AnalyticFn& fn, int j,
                                        const std::vector<cplx>& high_rhos,
                                        double tol) {
  const double slot1 = 1.0 + 0.5 * (1 - j);
  const double slot2 = 2.0 + 0.5 * (1 - j);
  const double b0 = 0.5 * (slot1 + slot2);
  const struct {
    double b, y;
  } attempts[] = {{b0, 2.5}, {b0, 4.0}, {b0 + 0.7, 4.0}};

  for (const auto& att : attempts) {
    std::vector<cplx> raw;
    try {
      raw = all_roots_in_box(fn, -att.b, att.b, -att.y, att.y, tol, 1.0);
    } catch (const NonConvergence&) {
      continue;
    }
    for (cplx& r : raw) r = canonical(r, nullptr);

    // Cluster the canonicalized copies (greedy, tolerance-based: the +-rho
    // mates of one zero polish to values equal only up to rounding). Each
    // lambda appears once per +-rho pair; a 2k-fold rho-cluster at the
    // origin is a k-fold lambda.
    std::vector<cplx> reps;
    std::vector<size_t> copies;
    for (const cplx& r : raw) {
      size_t hit = reps.size();
      for (size_t i = 0; i < reps.size(); ++i)
        if (std::abs(r - reps[i]) < 1e-5) hit = i;
      if (hit == reps.size()) {
        reps.push_back(r);
        copies.push_back(1);
      } else {
        reps[hit] = (reps[hit] * double(copies[hit]) + r) /
                    double(copies[hit] + 1);
        ++copies[hit];
      }
    }
    std::vector<cplx> lambdas;
    bool odd_cluster = false;
    for (size_t i = 0; i < reps.size(); ++i) {
      if (copies[i] % 2 != 0) {
        odd_cluster = true;
        break;
      }
      bool duplicate_of_high = false;
      for (const cplx& hr : high_rhos)
        if (std::abs(reps[i] - hr) < 1e-4) duplicate_of_high = true;
      if (!duplicate_of_high)
        for (size_t c = 0; c < copies[i] / 2; ++c)
          lambdas.push_back(reps[i] * reps[i]);
    }
    if (odd_cluster) continue;  // a zero straddled the boundary; widen
    std::sort(lambdas.begin(), lambdas.end(), [](cplx l, cplx r) {
      if (l.real() != r.real()) return l.real() < r.real();
      return l.imag() < r.imag();
    });
    if (lambdas.size() == 2) return lambdas;
    if (lambdas.size() > 2)
      throw NonConvergence(
          0, "compute_spectrum: more than two low eigenvalues found");
  }
  throw NonConvergence(0,
                       "compute_spectrum: low eigenvalue sweep failed");
}

}  // namespace

Spectrum compute_spectrum(int j, const CharFnModel& model, int n_max,
                          const SpectrumOptions& opt) {
  if (n_max < 8) throw DomainError("compute_spectrum: n_max must be >= 8");
  if (j != 0 && j != 1)
    throw DomainError("compute_spectrum: j must be 0 or 1");
  CharFnEvaluator ev(model);
  const double a = model.a.value();
  AnalyticFn fn{[&ev, j](cplx r) { return ev.eval_at_rho(j, r); },
                [&ev, j](cplx r) { return ev.deriv_at_rho(j, r); }};

  std::vector<cplx> rhos(n_max);
  std::vector<std::exception_ptr> failures(n_max);

  auto solve_index = [&](int n) {
    cplx seed = spectrum_seed(j, n, model.omega, a);
    NewtonOptions nopt;
    nopt.tol = opt.tol_root;
    nopt.scale = std::max(1.0, std::abs(seed));
    nopt.fallback_radius = 0.5;
    cplx root;
    try {
      root = newton_root(fn, seed, nopt);
      // Keep each root in its own slot; a far-off basin means Newton
      // jumped, so redo the search locally.
      if (std::abs(root - seed) > 0.49)
        root = find_root_in_box(fn, seed, 0.5, nopt.tol, nopt.scale);
    } catch (const NonConvergence& e) {
      throw NonConvergence(n, "compute_spectrum: index " + std::to_string(n) +
                                  ": " + e.what());
    }
    root = canonical(root, nullptr);
    cplx lambda = root * root;
    if (std::abs(ev.eval_at_rho(j, root)) >
        opt.certify_tol * std::max(1.0, std::abs(lambda)))
      throw NonConvergence(n, "compute_spectrum: certification failed at " +
                                  std::to_string(n));
    rhos[n] = root;
  };

  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    for (int n = 2; n < n_max; ++n) solve_index(n);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (int n = 2 + t; n < n_max; n += threads) {
          try {
            solve_index(n);
          } catch (...) {
            failures[n] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  std::vector<cplx> high(rhos.begin() + 2, rhos.end());
  std::vector<cplx> low = low_block_eigenvalues(fn, j, high, opt.tol_root);
  for (int n = 0; n < 2; ++n) {
    cplx root = canonical(rho_of(low[n]), nullptr);
    if (std::abs(ev.eval_at_rho(j, root)) >
        opt.certify_tol * std::max(1.0, std::abs(low[n])))
      throw NonConvergence(n, "compute_spectrum: certification failed at " +
                                  std::to_string(n));
    rhos[n] = root;
  }

  std::vector<cplx> lambdas(n_max);
  for (int n = 0; n < n_max; ++n) lambdas[n] = rhos[n] * rhos[n];
  std::sort(lambdas.begin(), lambdas.end(), [](cplx l, cplx r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });

  // Merge rho-clusters: members of a cluster are averaged and repeated, so
  // multiple eigenvalues appear as identical adjacent entries.
  int i = 0;
  while (i < n_max) {
    int k = i + 1;
    while (k < n_max && std::abs(rho_of(lambdas[k]) - rho_of(lambdas[i])) <
                            opt.merge_tol)
      ++k;
    if (k - i > 1) {
      cplx mean = 0.0;
      for (int l = i; l < k; ++l) mean += lambdas[l];
      mean /= static_cast<double>(k - i);
      for (int l = i; l < k; ++l) lambdas[l] = mean;
    }
    i = k;
  }

  Spectrum s;
  s.j = j;
  s.delay = a;
  s.lambdas = std::move(lambdas);
  return s;
}

cplx eval_cosine_solution_at_pi(int j, cplx lambda, const PotentialPair& pot) {
  const Grid& grid = pot.grid();
  const int m = grid.m();
  const int ia = pot.a_node();
  const int wb = m - ia;
  const double a = pot.a();
  const cplx rho = rho_of(lambda);
  const double pa = kPi - a;
  cplx omega = omega_of_x(kPi, pot);

  // u_j(v) = K_j(pi, pi - v) on (0, pi - a), zero beyond.
  std::vector<cplx> u(wb + 1);
  for (int k = 0; k <= wb; ++k) u[k] = kernel_Kj(j, kPi, kPi - grid.node(k), pot);
  PiecewiseGridFn ufn = PiecewiseGridFn::lo_only(grid, wb, std::move(u));

  if (j == 0)
    return std::cos(rho * kPi) + omega * pa * sinc(rho * pa) +
           integrate_against_sin_over_rho(ufn, rho);
  return -rho * std::sin(rho * kPi) + omega * std::cos(rho * pa) +
         integrate_against_cos(ufn, rho);
}

}  // namespace specdelay
