#pragma once

// Invariant extension of functions on N (resp. S) to K1 (resp. H), its
// restrictions to M (resp. T = N x A) and the twist Gamma between them.
//
// Flat coordinate charts used by all numerical code:
//   K1: (top layer v [m-1], shift u [k], acting layers x [k]),  k = dim N - (m-1)
//   H : (n [dim N], shift a [m-1], base log-diagonal b [m-1])
// The leading block is the abelian picture (M, resp. T) on which the
// commutative convolution runs; the trailing block is the remaining
// coordinate of the base point.

#include <span>

#include "nilharm/grid.hpp"
#include "nilharm/lie_groups.hpp"
#include "nilharm/test_functions.hpp"

namespace nilharm {

class ExtendedChart {
 public:
  ExtendedChart(ExtendedCase kind, GroupSpec spec);

  ExtendedCase kind() const { return kind_; }
  const GroupSpec& spec() const { return spec_; }
  BaseGroup base_group() const { return kind_ == ExtendedCase::K1 ? BaseGroup::N : BaseGroup::S; }

  std::size_t dim() const { return conv_dim() + param_dim(); }
  /// Dimension of M (resp. T): the slots the commutative convolution acts on.
  std::size_t conv_dim() const;
  std::size_t param_dim() const;
  /// Dimension of the base group N (resp. S).
  std::size_t base_dim() const;

  ExtendedPoint to_point(std::span<const double> coords) const;
  Coords to_coords(const ExtendedPoint& p) const;

  /// Base-group coordinates of the base point encoded in a flat chart point.
  Coords base_coords(std::span<const double> coords) const;
  /// Chart point from base-group coordinates and the shift.
  Coords from_base(std::span<const double> base, std::span<const double> shift) const;
  std::span<const double> shift_of(std::span<const double> coords) const;

 private:
  ExtendedCase kind_;
  GroupSpec spec_;
};

/// The abelian shift embedded in the base group: acting layers for K1,
/// (identity, u) in S for H.
Coords iota_apply(ExtendedCase kind, const GroupSpec& spec, std::span<const double> shift,
                  std::span<const double> base);

/// f(iota(shift) o base) with base and result in base-group coordinates.
cplx tilde_eval_base(const TestFunction& f, ExtendedCase kind, const GroupSpec& spec,
                     std::span<const double> base, std::span<const double> shift);
cplx tilde_eval(const TestFunction& f, const ExtendedPoint& p);
cplx tilde_eval(const TestFunction& f, const ExtendedChart& chart, std::span<const double> coords);

/// |f~(s-twisted point) - f~(p)| for s in the acting factor.
double invariance_residual(const TestFunction& f, const ExtendedPoint& p,
                           std::span<const double> s);

/// Base-group coordinates of the point that f~|_M (resp. f~|_T) evaluates f at.
Coords restriction_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> m_coords);
PointFunction restrict_to_M(const TestFunction& f, ExtendedCase kind, const GroupSpec& spec);

/// Gamma: functions on M (resp. T) to functions on N (resp. S), and back.
Coords gamma_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> base);
Coords gamma_inv_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> m_coords);
PointFunction gamma(PointFunction h, ExtendedCase kind, const GroupSpec& spec);
PointFunction gamma_inv(PointFunction g, ExtendedCase kind, const GroupSpec& spec);

/// Top layer of iota(u) iota_top(v) iota(u)^-1 (K1), or rho(u) n (H).
Coords twist(ExtendedCase kind, const GroupSpec& spec, std::span<const double> v,
             std::span<const double> u);
/// Determinant of the linear map v -> twist(v, u).
double twist_jacobian(ExtendedCase kind, const GroupSpec& spec, std::span<const double> u);

}  // namespace nilharm
