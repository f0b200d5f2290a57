#include "nilharm/ideals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nilharm/errors.hpp"
#include "nilharm/reduce.hpp"

namespace nilharm {

namespace {

constexpr ExtendedCase kCase = ExtendedCase::K1;

void require_supported(const GroupSpec& spec) {
  if (spec.m() > 3) throw DomainError("the ideal correspondence is checked for m = 2 and m = 3");
}

struct Sampled {
  std::vector<std::vector<cplx>> columns;
  double vol = 0.0;
};

// Dictionary sampled on the N grid, or its Gamma^-1 image on the M grid.
Sampled sample_dictionary(const IdealModel& model, IdealSide side) {
  Sampled s;
  s.vol = cell_volume(model.grid);
  for (const auto& d : model.dictionary) {
    const PointFunction f = side == IdealSide::N ? d : gamma_inv(d, kCase, model.spec);
    s.columns.push_back(sample(f, model.grid).samples);
  }
  return s;
}

std::vector<cplx> target(const IdealModel& model, const TestFunction& psi, const TestFunction& g,
                         IdealSide side) {
  const std::size_t n = grid_size(model.grid);
  std::vector<cplx> out(n);
  const std::size_t d = model.grid.size();
  if (side == IdealSide::N) {
    const PointFunction pf = [&psi](std::span<const double> y) { return psi.evaluate(y); };
    const PointFunction gf = [&g](std::span<const double> y) { return g.evaluate(y); };
    parallel_for(n, [&](std::size_t i) {
      Coords x(d);
      grid_node(model.grid, i, x);
      const PointList pts{x};
      out[i] = convolve_group(pf, gf, BaseGroup::N, model.spec, pts, model.inner)[0];
    });
  } else {
    const PointFunction gm = restrict_to_M(g, kCase, model.spec);
    parallel_for(n, [&](std::size_t i) {
      Coords c(d);
      grid_node(model.grid, i, c);
      out[i] = gamma_convolution_at(psi, gm, model.spec, c.span(), model.inner);
    });
  }
  return out;
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return deterministic_sum<cplx>(a.size(), [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

Eigen::MatrixXcd gram(const Sampled& s) {
  const auto k = static_cast<Eigen::Index>(s.columns.size());
  Eigen::MatrixXcd G(k, k);
  const auto n = static_cast<std::size_t>(k);
  parallel_for(n * n, [&](std::size_t idx) {
    const std::size_t r = idx / n, c = idx % n;
    if (c < r) return;
    const cplx v = dot(s.columns[r], s.columns[c]) * s.vol;
    G(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    G(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = std::conj(v);
  });
  return G;
}

ClosureResult project(const Sampled& s, const Eigen::MatrixXcd& G, const std::vector<cplx>& t) {
  ClosureResult r;
  const double tnorm = std::sqrt(dot(t, t).real() * s.vol);
  if (tnorm == 0.0) return r;
  const auto k = static_cast<Eigen::Index>(s.columns.size());
  Eigen::VectorXcd b(k);
  for (Eigen::Index i = 0; i < k; ++i) b(i) = dot(s.columns[static_cast<std::size_t>(i)], t) * s.vol;

  // Pseudo-inverse through the Hermitian eigendecomposition; eigenvalues below
  // a relative cutoff are dropped and flagged.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXcd y = eig.eigenvectors().adjoint() * b;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (ev(i) > cutoff) {
      y(i) /= ev(i);
    } else {
      y(i) = 0.0;
      r.rank_deficient = true;
    }
  }
  const Eigen::VectorXcd c = eig.eigenvectors() * y;

  std::vector<cplx> res = t;
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& col = s.columns[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= c(j) * col[i];
  }
  r.relative_residual = std::sqrt(dot(res, res).real() * s.vol) / tnorm;
  return r;
}

ClosureResult closure_with(const IdealModel& model, const Sampled& s, const Eigen::MatrixXcd& G,
                           const TestFunction& psi, IdealSide side) {
  ClosureResult worst;
  for (const auto& g : model.generators) {
    const ClosureResult r = project(s, G, target(model, psi, g, side));
    worst.relative_residual = std::max(worst.relative_residual, r.relative_residual);
    worst.rank_deficient = worst.rank_deficient || r.rank_deficient;
  }
  return worst;
}

}  // namespace

std::vector<TestFunction> gaussian_lattice(const GroupSpec& spec, std::size_t count, double sigma,
                                           double spacing) {
  const auto d = static_cast<std::size_t>(spec.dim_n());
  std::vector<std::vector<int>> sites;
  int radius = 0;
  while (sites.size() < count) {
    ++radius;
    sites.clear();
    std::vector<int> idx(d, -radius);
    for (;;) {
      sites.push_back(idx);
      std::size_t k = d;
      while (k > 0 && ++idx[k - 1] > radius) idx[--k] = -radius;
      if (k == 0) break;
    }
  }
  auto norm2 = [](const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x * x;
    return s;
  };
  std::stable_sort(sites.begin(), sites.end(),
                   [&](const auto& a, const auto& b) { return norm2(a) < norm2(b); });
  sites.resize(count);
  std::vector<TestFunction> out;
  const Coords w(d, 1.0 / (sigma * sigma));
  for (const auto& site : sites) {
    Coords c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = spacing * site[i];
    out.push_back(TestFunction::gaussian(c.span(), w.span()));
  }
  return out;
}

IdealModel make_ideal_model(const GroupSpec& spec, std::vector<TestFunction> generators,
                            const std::vector<TestFunction>& lattice,
                            const std::vector<TestFunction>& probes, GridSpec grid, GridSpec inner) {
  require_supported(spec);
  if (generators.empty()) throw InvalidArgument("an ideal model needs at least one generator");
  IdealModel m;
  m.spec = spec;
  m.grid = std::move(grid);
  m.inner = std::move(inner);
  const auto d = static_cast<std::size_t>(spec.dim_n());
  if (m.grid.size() != d || m.inner.size() != d) throw InvalidArgument("ideal grids must match dim N");
  m.generators = std::move(generators);
  for (const auto& g : m.generators) m.dictionary.push_back([g](std::span<const double> x) { return g(x); });
  for (const auto& l : lattice) m.dictionary.push_back([l](std::span<const double> x) { return l(x); });
  for (const auto& g : m.generators)
    for (const auto& p : probes) {
      m.dictionary.push_back([g, p, spec, inner = m.inner](std::span<const double> x) {
        const PointList pts{Coords(x)};
        return convolve_group(p, g, BaseGroup::N, spec, pts, inner)[0];
      });
    }
  return m;
}

cplx gamma_convolution_at(const TestFunction& psi, const PointFunction& g_m, const GroupSpec& spec,
                          std::span<const double> mc, const GridSpec& inner) {
  const auto top = static_cast<std::size_t>(spec.m() - 1);
  const auto v = mc.first(top);
  const auto u = mc.subspan(top);
  Coords neg_u(u);
  for (double& x : neg_u) x = -x;
  const ExtendedChart chart(kCase, spec);
  const PointFunction psi_m = conv_slot_function(psi, chart);
  return quadrature(
      [&](std::span<const double> wy) {
        const cplx p = psi_m(wy);
        if (p == cplx{}) return cplx{};
        const Coords tw = twist(kCase, spec, wy.first(top), neg_u.span());
        Coords arg(mc.size());
        for (std::size_t i = 0; i < top; ++i) arg[i] = v[i] - tw[i];
        for (std::size_t i = top; i < mc.size(); ++i) arg[i] = mc[i] - wy[i];
        return g_m(arg.span()) * p;
      },
      inner);
}

ResidualReport gamma_intertwine_residual(const TestFunction& psi, const TestFunction& phi,
                                         const GroupSpec& spec, const PointList& points,
                                         const GridSpec& inner) {
  require_supported(spec);
  ResidualReport r;
  if (psi.is_zero() || phi.is_zero()) return r;
  const std::vector<cplx> rhs = convolve_group(psi, phi, BaseGroup::N, spec, points, inner);
  const PointFunction phi_m = restrict_to_M(phi, kCase, spec);
  GridSpec shifted = inner;
  for (auto& axis : shifted) axis.center += 0.5 * axis.step();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Coords mc = gamma_point(kCase, spec, points[i].span());
    const cplx lhs = gamma_convolution_at(psi, phi_m, spec, mc.span(), shifted);
    r.residual = std::max(r.residual, std::abs(lhs - rhs[i]));
    r.scale = std::max(r.scale, std::abs(rhs[i]));
  }
  return r;
}

ClosureResult closure_residual(const IdealModel& model, const TestFunction& psi, IdealSide side) {
  if (model.dictionary.empty()) throw InvalidArgument("closure_residual needs a nonempty dictionary");
  if (psi.is_zero()) return {};
  const Sampled s = sample_dictionary(model, side);
  return closure_with(model, s, gram(s), psi, side);
}

std::vector<CorrespondenceEntry> correspondence_check(const IdealModel& model,
                                                      const std::vector<TestFunction>& probes) {
  std::vector<CorrespondenceEntry> out;
  if (probes.empty()) return out;
  const Sampled sn = sample_dictionary(model, IdealSide::N);
  const Sampled sm = sample_dictionary(model, IdealSide::M);
  const Eigen::MatrixXcd gn = gram(sn), gm = gram(sm);
  for (const auto& psi : probes) {
    CorrespondenceEntry e;
    if (!psi.is_zero()) {
      e.n_residual = closure_with(model, sn, gn, psi, IdealSide::N).relative_residual;
      e.m_residual = closure_with(model, sm, gm, psi, IdealSide::M).relative_residual;
    }
    e.difference = std::abs(e.n_residual - e.m_residual);
    out.push_back(e);
  }
  return out;
}

double gamma_inner_product_error(const IdealModel& model) {
  const Eigen::MatrixXcd gn = gram(sample_dictionary(model, IdealSide::N));
  const Eigen::MatrixXcd gm = gram(sample_dictionary(model, IdealSide::M));
  const double scale = gn.cwiseAbs().maxCoeff();
  return (gn - gm).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

}  // namespace nilharm
