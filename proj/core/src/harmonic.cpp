#include "nilharm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "nilharm/errors.hpp"
#include "nilharm/reduce.hpp"

namespace nilharm {

namespace {

PointFunction as_point_function(const TestFunction& f) {
  return [&f](std::span<const double> x) { return f.evaluate(x); };
}

// X * Z^-1 in M (additive) or T = N x A (N law, additive on A).
Coords conv_div(const ExtendedChart& chart, std::span<const double> x, std::span<const double> z) {
  const std::size_t d = chart.conv_dim();
  if (chart.kind() == ExtendedCase::K1) {
    Coords out(x.first(d));
    for (std::size_t i = 0; i < d; ++i) out[i] -= z[i];
    return out;
  }
  const GroupSpec& s = chart.spec();
  const auto dn = static_cast<std::size_t>(s.dim_n());
  Coords out(unipotent_mul(UnipotentElement(s, x.first(dn)),
                           unipotent_inv(UnipotentElement(s, z.first(dn))))
                 .coords());
  for (std::size_t i = dn; i < d; ++i) out.push_back(x[i] - z[i]);
  return out;
}

GridSpec box_around(std::span<const double> center, std::size_t points, double half_width) {
  GridSpec g;
  for (double c : center) g.emplace_back(c, half_width, points);
  return g;
}

}  // namespace

std::vector<cplx> convolve_group(const PointFunction& g, const PointFunction& f, BaseGroup group,
                                 const GroupSpec& spec, const PointList& points,
                                 const GridSpec& grid) {
  const std::size_t d = base_dim(group, spec);
  if (grid.size() != d) throw InvalidArgument("convolve_group: grid dimension mismatch");
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const Coords& x : points) {
    if (x.size() != d) throw InvalidArgument("convolve_group: point dimension mismatch");
    out.push_back(quadrature(
        [&](std::span<const double> y) {
          const cplx gy = g(y);
          if (gy == cplx{}) return cplx{};
          const Coords yinv = base_inv(group, spec, y);
          const Coords arg = base_mul(group, spec, yinv.span(), x.span());
          return f(arg.span()) * gy;
        },
        grid));
  }
  return out;
}

std::vector<cplx> convolve_group(const TestFunction& g, const TestFunction& f, BaseGroup group,
                                 const GroupSpec& spec, const PointList& points,
                                 const GridSpec& grid) {
  if (g.is_zero() || f.is_zero()) return std::vector<cplx>(points.size(), cplx{});
  return convolve_group(as_point_function(g), as_point_function(f), group, spec, points, grid);
}

std::vector<cplx> convolve_abelian(const PointFunction& g, const PointFunction& f,
                                   const PointList& points, const GridSpec& grid) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const Coords& x : points) {
    if (x.size() != grid.size()) throw InvalidArgument("convolve_abelian: dimension mismatch");
    out.push_back(quadrature(
        [&](std::span<const double> y) {
          Coords arg(x);
          for (std::size_t i = 0; i < arg.size(); ++i) arg[i] -= y[i];
          return f(arg.span()) * g(y);
        },
        grid));
  }
  return out;
}

std::vector<cplx> convolve_abelian(const TestFunction& g, const TestFunction& f,
                                   const PointList& points, const GridSpec& grid) {
  if (g.is_zero() || f.is_zero()) return std::vector<cplx>(points.size(), cplx{});
  return convolve_abelian(as_point_function(g), as_point_function(f), points, grid);
}

PlancherelReport plancherel_report(const GridFunction& samples) {
  PlancherelReport r;
  r.time_norm_sq = norm_sq(samples);
  r.freq_norm_sq = norm_sq(fourier_forward(samples));
  r.rel_err = std::abs(r.time_norm_sq - r.freq_norm_sq) / std::max(r.time_norm_sq, 1e-300);
  return r;
}

PlancherelReport plancherel_check(const TestFunction& f, const GridSpec& grid) {
  PlancherelReport r = plancherel_report(sample(f, grid));
  const bool pure = std::all_of(f.terms().begin(), f.terms().end(), [](const GaussianTerm& t) {
    return std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; });
  });
  if (pure && !f.is_zero()) {
    r.has_exact = true;
    r.exact_norm_sq = gaussian_norm_sq(f);
    r.exact_rel_err = std::abs(r.freq_norm_sq - r.exact_norm_sq) / r.exact_norm_sq;
  }
  return r;
}

double haar_invariance_error(const TestFunction& f, BaseGroup group, const GroupSpec& spec,
                             std::span<const double> t, Side side, const GridSpec& grid) {
  if (t.size() != base_dim(group, spec) || grid.size() != t.size()) {
    throw InvalidArgument("haar_invariance_error: dimension mismatch");
  }
  const cplx plain = quadrature(as_point_function(f), grid);
  const cplx moved = quadrature(
      [&](std::span<const double> x) {
        const Coords y = side == Side::Left ? base_mul(group, spec, t, x) : base_mul(group, spec, x, t);
        return f.evaluate(y.span());
      },
      grid);
  return std::abs(moved - plain) / std::max(std::abs(plain), 1e-300);
}

PointFunction conv_slot_function(const TestFunction& phi, const ExtendedChart& chart) {
  if (chart.kind() == ExtendedCase::H) return [phi](std::span<const double> t) { return phi(t); };
  const GroupSpec spec = chart.spec();
  const std::size_t top = static_cast<std::size_t>(spec.m() - 1);
  return [phi, spec, top](std::span<const double> mc) {
    const UnipotentElement n = from_top_and_acting(spec, mc.first(top), mc.subspan(top));
    return phi.evaluate(n.coords());
  };
}

cplx reduction_group_side(const TestFunction& phi, const TestFunction& f,
                          const ExtendedChart& chart, std::span<const double> point,
                          std::size_t grid_points, double half_width, double skip_below) {
  const BaseGroup group = chart.base_group();
  const GroupSpec& spec = chart.spec();
  const Coords base = chart.base_coords(point);
  const Coords shift(chart.shift_of(point));
  const std::size_t d = chart.base_dim();
  const Coords origin(d, 0.0);
  return quadrature(
      [&](std::span<const double> y) {
        const cplx w = phi.evaluate(y);
        if (std::abs(w) < skip_below) return cplx{};
        const Coords yinv = base_inv(group, spec, y);
        const Coords arg = base_mul(group, spec, yinv.span(), base.span());
        return tilde_eval_base(f, chart.kind(), spec, arg.span(), shift.span()) * w;
      },
      box_around(origin.span(), grid_points, half_width));
}

cplx reduction_abelian_side(const TestFunction& phi, const TestFunction& f,
                            const ExtendedChart& chart, std::span<const double> point,
                            std::size_t grid_points, double half_width, double skip_below) {
  const std::size_t dc = chart.conv_dim();
  const auto xc = point.first(dc);
  const auto param = point.subspan(dc);
  const PointFunction phi_c = conv_slot_function(phi, chart);
  const Coords origin(dc, 0.0);
  return quadrature(
      [&](std::span<const double> z) {
        const Coords c = conv_div(chart, xc, z);
        const cplx w = phi_c(c.span());
        if (std::abs(w) < skip_below) return cplx{};
        Coords full(z);
        for (double p : param) full.push_back(p);
        return tilde_eval(f, chart, full.span()) * w;
      },
      box_around(origin.span(), grid_points, half_width));
}

ResidualReport reduction_residual(const TestFunction& phi, const TestFunction& f,
                                  const ExtendedChart& chart, const PointList& points,
                                  std::size_t grid_points, double half_width) {
  ResidualReport r;
  if (phi.is_zero() || f.is_zero()) return r;
  const Coords origin(chart.base_dim(), 0.0);
  const GridSpec box = box_around(origin.span(), grid_points, half_width);
  std::vector<double> peaks(grid_size(box));
  parallel_for(peaks.size(), [&](std::size_t i) {
    Coords y(box.size());
    grid_node(box, i, y);
    peaks[i] = std::abs(phi.evaluate(y.span()));
  });
  const double skip = kNegligibleWeight * *std::max_element(peaks.begin(), peaks.end());
  for (const Coords& p : points) {
    const cplx lhs = reduction_group_side(phi, f, chart, p.span(), grid_points, half_width, skip);
    const cplx rhs = reduction_abelian_side(phi, f, chart, p.span(), grid_points, half_width, skip);
    r.residual = std::max(r.residual, std::abs(lhs - rhs));
    r.scale = std::max(r.scale, std::abs(rhs));
  }
  return r;
}

std::vector<std::vector<long>> frequency_offsets(std::size_t dims, std::size_t count) {
  std::vector<std::vector<long>> all;
  const long steps[] = {0, 1, -1, 2, -2};
  std::vector<std::size_t> idx(dims, 0);
  for (;;) {
    std::vector<long> o(dims);
    for (std::size_t i = 0; i < dims; ++i) o[i] = steps[idx[i]];
    all.push_back(o);
    std::size_t k = dims;
    while (k > 0 && ++idx[k - 1] == std::size(steps)) idx[--k] = 0;
    if (k == 0) break;
  }
  auto l1 = [](const std::vector<long>& o) {
    return std::accumulate(o.begin(), o.end(), 0L, [](long s, long v) { return s + std::labs(v); });
  };
  std::stable_sort(all.begin(), all.end(),
                   [&](const auto& a, const auto& b) { return l1(a) < l1(b); });
  if (all.size() > count) all.resize(count);
  return all;
}

ResidualReport projected_convolution_check(const TestFunction& phi, const TestFunction& f,
                                           const ExtendedChart& chart, const ProjectedGrid& grid,
                                           std::size_t frequency_points) {
  const std::size_t dc = chart.conv_dim();
  const std::size_t dp = chart.param_dim();
  if (grid.outer.size() != dc + dp || grid.inner.size() != chart.base_dim()) {
    throw InvalidArgument("projected_convolution_check: grid dimensions do not match the chart");
  }
  const bool abelian = (chart.kind() == ExtendedCase::K1 && chart.spec().m() == 3) ||
                       (chart.kind() == ExtendedCase::H && chart.spec().m() == 2);
  if (!abelian) {
    throw DomainError("projected convolution needs an abelian M (K1 with m = 3, or H with m = 2)");
  }
  for (std::size_t k = dc; k < dc + dp; ++k) {
    if (grid.outer[k].center != 0.0) throw InvalidArgument("base-slot axes must be centred at 0");
  }
  ResidualReport r;
  if (phi.is_zero() || f.is_zero()) return r;

  const BaseGroup group = chart.base_group();
  const GroupSpec& spec = chart.spec();

  // Left side: phi * f~ on the full chart grid by group quadrature, then the
  // transform and the base-slot frequency integral.
  GridFunction conv(grid.outer);
  parallel_for(conv.size(), [&](std::size_t i) {
    Coords c(grid.outer.size());
    grid_node(grid.outer, i, c);
    const Coords base = chart.base_coords(c.span());
    const Coords shift(chart.shift_of(c.span()));
    conv.samples[i] = quadrature(
        [&](std::span<const double> y) {
          const cplx py = phi.evaluate(y);
          if (py == cplx{}) return cplx{};
          const Coords yinv = base_inv(group, spec, y);
          const Coords arg = base_mul(group, spec, yinv.span(), base.span());
          return tilde_eval_base(f, chart.kind(), spec, arg.span(), shift.span()) * py;
        },
        grid.inner);
  });
  const GridFunction full = fourier_forward(conv);
  const GridSpec conv_spec(grid.outer.begin(), grid.outer.begin() + static_cast<long>(dc));
  const GridSpec param_spec(grid.outer.begin() + static_cast<long>(dc), grid.outer.end());
  const std::size_t nc = grid_size(conv_spec);
  const std::size_t np = grid_size(param_spec);
  const double dnu = dual_cell_volume(param_spec);
  std::vector<cplx> lhs(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < np; ++j) s += full.samples[i * np + j];
    lhs[i] = s * dnu;
  }

  // Right side: transform of f~(., 0) times the transform of phi on M (resp. T).
  const Coords zero(dp, 0.0);
  const GridFunction f0 = sample(
      [&](std::span<const double> z) {
        Coords c(z);
        for (double v : zero) c.push_back(v);
        return tilde_eval(f, chart, c.span());
      },
      conv_spec);
  const GridFunction phic = sample(conv_slot_function(phi, chart), conv_spec);
  const GridFunction Ff = fourier_forward(f0);
  const GridFunction Fphi = fourier_forward(phic);
  for (std::size_t i = 0; i < nc; ++i) {
    r.scale = std::max(r.scale, std::abs(Ff.samples[i] * Fphi.samples[i]));
  }

  for (const auto& off : frequency_offsets(dc, frequency_points)) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dc; ++k) {
      const long P = static_cast<long>(conv_spec[k].points);
      const long j = P / 2 + off[k];
      flat = flat * static_cast<std::size_t>(P) + static_cast<std::size_t>(j);
    }
    r.residual = std::max(r.residual, std::abs(lhs[flat] - Ff.samples[flat] * Fphi.samples[flat]));
  }
  return r;
}

}  // namespace nilharm
