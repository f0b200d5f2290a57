#pragma once

// Convolutions on N and S, the commutative convolution on M (resp. T),
// Plancherel checks and the convolution-reduction identities for invariant
// extensions.

#include <vector>

#include "nilharm/extension.hpp"
#include "nilharm/fourier.hpp"
#include "nilharm/grid.hpp"

namespace nilharm {

using PointList = std::vector<Coords>;

struct PlancherelReport {
  double time_norm_sq = 0.0;
  double freq_norm_sq = 0.0;
  double rel_err = 0.0;  // discrete Parseval: time against frequency side
  bool has_exact = false;
  double exact_norm_sq = 0.0;   // closed-form integral of |f|^2
  double exact_rel_err = 0.0;   // frequency side against the closed form
};

/// Absolute residual together with the magnitude it should be judged against.
struct ResidualReport {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};

/// (g * f)(X) = int f(Y^-1 X) g(Y) dY over `grid` (centred where g lives),
/// with Lebesgue measure in N coordinates and dn dt on S.
std::vector<cplx> convolve_group(const TestFunction& g, const TestFunction& f, BaseGroup group,
                                 const GroupSpec& spec, const PointList& points,
                                 const GridSpec& grid);
std::vector<cplx> convolve_group(const PointFunction& g, const PointFunction& f, BaseGroup group,
                                 const GroupSpec& spec, const PointList& points,
                                 const GridSpec& grid);

/// (g *_c f)(X) = int f(X - Y) g(Y) dY.
std::vector<cplx> convolve_abelian(const TestFunction& g, const TestFunction& f,
                                   const PointList& points, const GridSpec& grid);
std::vector<cplx> convolve_abelian(const PointFunction& g, const PointFunction& f,
                                   const PointList& points, const GridSpec& grid);

PlancherelReport plancherel_report(const GridFunction& samples);
/// Fills the closed-form fields when f has no monomial factors.
PlancherelReport plancherel_check(const TestFunction& f, const GridSpec& grid);

/// Relative change of the integral of f under X -> t X (left) or X -> X t
/// (right), both integrals taken on the same grid.
enum class Side { Left, Right };
double haar_invariance_error(const TestFunction& f, BaseGroup group, const GroupSpec& spec,
                             std::span<const double> t, Side side, const GridSpec& grid);

/// phi transported to the abelian picture M (resp. T), in its coordinates.
PointFunction conv_slot_function(const TestFunction& phi, const ExtendedChart& chart);

/// Weights below this fraction of the largest phi sample are treated as zero.
inline constexpr double kNegligibleWeight = 1e-18;

/// Group side: int f~(Y^-1 base, shift) phi(Y) dY over a box around the
/// identity. Nodes whose phi weight is below skip_below contribute zero.
cplx reduction_group_side(const TestFunction& phi, const TestFunction& f,
                          const ExtendedChart& chart, std::span<const double> point,
                          std::size_t grid_points, double half_width, double skip_below = 0.0);
/// Commutative side on M (resp. T = N x A), integrated on a box centred at
/// the origin. The two sides use unrelated node sets.
cplx reduction_abelian_side(const TestFunction& phi, const TestFunction& f,
                            const ExtendedChart& chart, std::span<const double> point,
                            std::size_t grid_points, double half_width, double skip_below = 0.0);

/// max over points of |(phi * f~)(p) - (phi *_c f~)(p)|; scale = max |rhs|.
/// Both sides skip nodes with phi weight below kNegligibleWeight times the
/// largest phi sample on the box.
ResidualReport reduction_residual(const TestFunction& phi, const TestFunction& f,
                                  const ExtendedChart& chart, const PointList& points,
                                  std::size_t grid_points, double half_width);

struct ProjectedGrid {
  GridSpec outer;  // chart axes: M (resp. T) block, then the base slot
  GridSpec inner;  // base-group box for the group convolution
};

/// Frequency offsets (in dual-grid steps) used by the projected check:
/// the origin first, then by increasing l1 norm.
std::vector<std::vector<long>> frequency_offsets(std::size_t dims, std::size_t count);

/// The base-slot frequency integral of the transform of phi * f~ against
/// the product of the transforms of f~(., 0) and phi on M (resp. T).
ResidualReport projected_convolution_check(const TestFunction& phi, const TestFunction& f,
                                           const ExtendedChart& chart, const ProjectedGrid& grid,
                                           std::size_t frequency_points);

}  // namespace nilharm
