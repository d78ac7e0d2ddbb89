#ifndef SPECDELAY_TYPES_HPP
#define SPECDELAY_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace specdelay {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Contract violation: an argument is outside its documented domain.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Root search failed for eigenvalue index `index` even after the
/// argument-principle fallback.
class NonConvergence : public Error {
public:
  NonConvergence(int index, const std::string& what)
      : Error(what), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

/// The IVP integrator could not meet its step-halving tolerance.
class StepSizeFailure : public Error {
public:
  explicit StepSizeFailure(const std::string& what) : Error(what) {}
};

/// Fewer usable spectral indices than an estimator needs.
class InsufficientIndices : public Error {
public:
  explicit InsufficientIndices(const std::string& what) : Error(what) {}
};

/// The asymptotics fit window carries no usable cosine signal.
class IllConditionedFit : public Error {
public:
  explicit IllConditionedFit(const std::string& what) : Error(what) {}
};

/// CSV input could not be parsed; carries the 1-based offending line.
class CsvParseError : public Error {
public:
  CsvParseError(int line, const std::string& what)
      : Error(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Two spectrum files disagree on the delay they were computed with.
class DelayMismatch : public Error {
public:
  explicit DelayMismatch(const std::string& what) : Error(what) {}
};

/// The requested delay lies outside [pi/2, pi).
class DelayDomainError : public DomainError {
public:
  explicit DelayDomainError(const std::string& what) : DomainError(what) {}
};

/// Constant delay a. Valid range is [pi/2, pi): the transformation-operator
/// kernels used throughout require a >= pi/2, and a = pi degenerates.
class Delay {
public:
  explicit Delay(double a) : a_(a) {
    if (!(a >= kPi / 2.0 && a < kPi))
      throw DelayDomainError("delay must satisfy pi/2 <= a < pi, got " +
                             std::to_string(a));
  }
  double value() const { return a_; }

private:
  double a_;
};

/// Uniform grid on [0, pi] with m subintervals, nodes x_k = k*pi/m.
class Grid {
public:
  explicit Grid(int m) : m_(m) {
    if (m < 16) throw DomainError("grid must have at least 16 subintervals");
  }
  int m() const { return m_; }
  double h() const { return kPi / m_; }
  double node(int k) const { return k * kPi / m_; }
  int size() const { return m_ + 1; }

  /// Index of the node nearest to x (clamped to [0, m]).
  int nearest_node(double x) const {
    int k = static_cast<int>(x / h() + 0.5);
    if (k < 0) k = 0;
    if (k > m_) k = m_;
    return k;
  }

  bool operator==(const Grid& o) const { return m_ == o.m_; }
  bool operator!=(const Grid& o) const { return m_ != o.m_; }

private:
  int m_;
};

/// Result of snapping a delay onto a grid: the snapped node never falls
/// below pi/2 so the snapped delay remains valid.
struct SnappedDelay {
  Delay a;            // snapped value, a node of the grid
  int node;           // node index of the snapped delay
  double snap_distance;  // |requested - snapped|
};

inline SnappedDelay snap_delay(Delay requested, const Grid& grid) {
  int k = grid.nearest_node(requested.value());
  while (grid.node(k) < kPi / 2.0) ++k;  // never snap below pi/2
  if (k >= grid.m()) k = grid.m() - 1;   // keep a < pi
  double snapped = grid.node(k);
  return SnappedDelay{Delay(snapped), k,
                      std::abs(requested.value() - snapped)};
}

/// Eigenvalue list of one boundary value problem. `j` selects the boundary
/// condition at pi (0: y(pi) = 0, 1: y'(pi) = 0). Eigenvalues are sorted by
/// real part; multiple eigenvalues appear as repeated adjacent entries.
struct Spectrum {
  int j = 0;
  double delay = kPi / 2.0;
  std::vector<cplx> lambdas;

  int size() const { return static_cast<int>(lambdas.size()); }
};

/// Principal square root rho of lambda. Every characteristic-function
/// formula is even in rho, so the branch never matters; the principal
/// branch (Re rho >= 0) is used as the canonical representative.
inline cplx rho_of(cplx lambda) { return std::sqrt(lambda); }

}  // namespace specdelay

#endif  // SPECDELAY_TYPES_HPP
