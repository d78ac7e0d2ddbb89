#ifndef SPECDELAY_GRID_FN_HPP
#define SPECDELAY_GRID_FN_HPP

#include <cassert>
#include <functional>
#include <vector>

#include "specdelay/types.hpp"

namespace specdelay {

/// Antiderivative F(x) = integral over [x_begin, x] of a piecewise-linear
/// grid function supported on the node range [begin, end]. Queries are
/// clamped to the support, so the spurious ramp a zero-extended array would
/// contribute outside its support never enters. Partial cells integrate the
/// linear interpolant exactly, making F piecewise quadratic and C^1.
class Prefix {
public:
  Prefix() = default;

  Prefix(const Grid& grid, int node_begin, int node_end,
         const std::vector<cplx>& values)
      : grid_(grid), begin_(node_begin), end_(node_end) {
    assert(static_cast<int>(values.size()) == node_end - node_begin + 1);
    cum_.resize(values.size());
    vals_ = values;
    cum_[0] = 0.0;
    const double h = grid.h();
    for (int i = 1; i < static_cast<int>(values.size()); ++i)
      cum_[i] = cum_[i - 1] + 0.5 * h * (values[i - 1] + values[i]);
  }

  /// F(x), clamped to the support interval.
  cplx at(double x) const {
    const double h = grid_.h();
    double lo = grid_.node(begin_), hi = grid_.node(end_);
    if (x <= lo) return 0.0;
    if (x >= hi) return cum_.back();
    double u = (x - lo) / h;
    int c = static_cast<int>(u);
    if (c >= end_ - begin_) c = end_ - begin_ - 1;
    double s = (u - c) * h;  // offset into cell c
    cplx f0 = vals_[c];
    cplx slope = (vals_[c + 1] - vals_[c]) / h;
    return cum_[c] + s * f0 + 0.5 * s * s * slope;
  }

  /// Integral of the supported function over [lo, hi] (directed).
  cplx between(double lo, double hi) const { return at(hi) - at(lo); }

  /// Total mass over the whole support.
  cplx total() const { return cum_.empty() ? cplx(0.0) : cum_.back(); }

private:
  Grid grid_{16};
  int begin_ = 0, end_ = 0;
  std::vector<cplx> vals_;
  std::vector<cplx> cum_;
};

/// Grid function on [0, pi] with a single distinguished breakpoint node.
/// The two pieces carry independent one-sided samples at the break, so a
/// jump there is represented exactly; both pieces interpolate linearly.
class PiecewiseGridFn {
public:
  PiecewiseGridFn() = default;

  PiecewiseGridFn(const Grid& grid, int break_node, std::vector<cplx> lo,
                  std::vector<cplx> hi)
      : grid_(grid), break_(break_node), lo_(std::move(lo)),
        hi_(std::move(hi)) {
    assert(static_cast<int>(lo_.size()) == break_ + 1);
    assert(static_cast<int>(hi_.size()) == grid_.m() - break_ + 1);
  }

  /// Builds from one-sided callables; each piece samples its own side.
  static PiecewiseGridFn from_pieces(const Grid& grid, int break_node,
                                     const std::function<cplx(double)>& flo,
                                     const std::function<cplx(double)>& fhi) {
    std::vector<cplx> lo(break_node + 1), hi(grid.m() - break_node + 1);
    for (int k = 0; k <= break_node; ++k) lo[k] = flo(grid.node(k));
    for (int k = break_node; k <= grid.m(); ++k)
      hi[k - break_node] = fhi(grid.node(k));
    return PiecewiseGridFn(grid, break_node, std::move(lo), std::move(hi));
  }

  /// A function that is zero above the break (lo piece only).
  static PiecewiseGridFn lo_only(const Grid& grid, int break_node,
                                 std::vector<cplx> lo) {
    std::vector<cplx> hi(grid.m() - break_node + 1, 0.0);
    return PiecewiseGridFn(grid, break_node, std::move(lo), std::move(hi));
  }

  /// A function that is zero below the break (hi piece only).
  static PiecewiseGridFn hi_only(const Grid& grid, int break_node,
                                 std::vector<cplx> hi) {
    std::vector<cplx> lo(break_node + 1, 0.0);
    return PiecewiseGridFn(grid, break_node, std::move(lo), std::move(hi));
  }

  const Grid& grid() const { return grid_; }
  int break_node() const { return break_; }
  double break_x() const { return grid_.node(break_); }
  const std::vector<cplx>& lo() const { return lo_; }
  const std::vector<cplx>& hi() const { return hi_; }

  cplx lo_node(int k) const { return lo_[k]; }
  cplx hi_node(int k) const { return hi_[k - break_]; }

  /// Node values for integration cells: cells below the break read the lo
  /// piece, cells at/above read the hi piece, so the break jump integrates
  /// exactly.
  cplx cell_left(int c) const { return c < break_ ? lo_[c] : hi_[c - break_]; }
  cplx cell_right(int c) const {
    return c < break_ ? lo_[c + 1] : hi_[c + 1 - break_];
  }

  /// Linear interpolation reading the lo piece; x clamped to [0, break_x].
  cplx value_lo(double x) const { return interp(lo_, 0, break_, x); }

  /// Linear interpolation reading the hi piece; x clamped to [break_x, pi].
  cplx value_hi(double x) const { return interp(hi_, break_, grid_.m(), x); }

  /// Value with jump resolved towards the lo piece at the break.
  cplx value(double x) const {
    return x <= break_x() ? value_lo(x) : value_hi(x);
  }

  Prefix prefix_lo() const { return Prefix(grid_, 0, break_, lo_); }
  Prefix prefix_hi() const { return Prefix(grid_, break_, grid_.m(), hi_); }

  /// Mirror map x -> pi - x. The break moves to m - break.
  PiecewiseGridFn reflected() const {
    int rb = grid_.m() - break_;
    std::vector<cplx> rlo(rb + 1), rhi(break_ + 1);
    for (int k = 0; k <= rb; ++k) rlo[k] = hi_[hi_.size() - 1 - k];
    for (int k = 0; k <= break_; ++k) rhi[k] = lo_[lo_.size() - 1 - k];
    return PiecewiseGridFn(grid_, rb, std::move(rlo), std::move(rhi));
  }

private:
  cplx interp(const std::vector<cplx>& v, int nb, int ne, double x) const {
    const double h = grid_.h();
    double u = x / h - nb;
    if (u <= 0.0) return v.front();
    if (u >= ne - nb) return v.back();
    int c = static_cast<int>(u);
    double t = u - c;
    return v[c] * (1.0 - t) + v[c + 1] * t;
  }

  Grid grid_{16};
  int break_ = 0;
  std::vector<cplx> lo_, hi_;
};

}  // namespace specdelay

#endif  // SPECDELAY_GRID_FN_HPP
