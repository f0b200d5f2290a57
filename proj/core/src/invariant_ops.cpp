#include "nilharm/invariant_ops.hpp"

#include <cmath>

#include "nilharm/errors.hpp"
#include "nilharm/fourier.hpp"
#include "nilharm/reduce.hpp"

namespace nilharm {

namespace {

// Row i of the unipotent part gains -t times row j, for E_k at entry (i, j).
void unipotent_flow(const GroupSpec& s, double* x, int k, double t) {
  const auto [i, j] = s.entry(k);
  x[k] -= t;
  for (int c = j + 1; c < s.m(); ++c) x[s.index(i, c)] -= t * x[s.index(j, c)];
}

// n <- rho(-t e_r) n and b_r <- b_r - t, for the A generator r.
void diagonal_flow(const GroupSpec& s, double* x, int r, double t) {
  const int last = s.m() - 1;
  for (int k = 0; k < s.dim_n(); ++k) {
    const auto [i, j] = s.entry(k);
    double e = 0.0;
    if (i == r) e -= t;
    if (j == r) e += t;
    if (j == last) e -= t;
    if (e != 0.0) x[k] *= std::exp(e);
  }
  x[s.dim_n() + r] -= t;
}

const std::vector<std::pair<double, double>>& first_derivative(int order) {
  static const std::vector<std::pair<double, double>> o2{{1.0, 0.5}, {-1.0, -0.5}};
  static const std::vector<std::pair<double, double>> o4{
      {-2.0, 1.0 / 12.0}, {-1.0, -8.0 / 12.0}, {1.0, 8.0 / 12.0}, {2.0, -1.0 / 12.0}};
  if (order == 2) return o2;
  if (order == 4) return o4;
  throw InvalidArgument("stencil order must be 2 or 4");
}

void check_word_lengths(const EnvelopingElement& u) {
  if (u.max_word_length() > kMaxWordLength) throw UnsupportedOrderError(u.max_word_length());
}

}  // namespace

std::size_t field_dim(FieldGroup group, const GroupSpec& spec) {
  switch (group) {
    case FieldGroup::N: return static_cast<std::size_t>(spec.dim_n());
    case FieldGroup::S: return static_cast<std::size_t>(spec.dim_s());
    case FieldGroup::M: return static_cast<std::size_t>(spec.dim_n());
  }
  return 0;
}

Flow group_flow(FieldGroup group, const GroupSpec& spec) {
  switch (group) {
    case FieldGroup::N:
      return [spec](Coords& x, int k, double t) { unipotent_flow(spec, x.data(), k, t); };
    case FieldGroup::S:
      return [spec](Coords& x, int k, double t) {
        if (k < spec.dim_n())
          unipotent_flow(spec, x.data(), k, t);
        else
          diagonal_flow(spec, x.data(), k - spec.dim_n(), t);
      };
    case FieldGroup::M:
      return [](Coords& x, int k, double t) { x[static_cast<std::size_t>(k)] -= t; };
  }
  throw InvalidArgument("unknown field group");
}

OperatorStencil word_stencil(const Word& word, double h, int order) {
  if (word.size() > kMaxWordLength) throw UnsupportedOrderError(word.size());
  if (!(h > 0.0)) throw InvalidArgument("stencil step must be positive");
  const auto& base = first_derivative(order);
  OperatorStencil s;
  s.h = h;
  s.order = order;
  s.entries.push_back({{}, 1.0});
  for (int k : word) {
    std::vector<StencilEntry> next;
    for (const auto& e : s.entries)
      for (const auto& [off, w] : base) {
        StencilEntry n = e;
        n.steps.emplace_back(k, off * h);
        n.weight *= w / h;
        next.push_back(std::move(n));
      }
    s.entries = std::move(next);
  }
  return s;
}

OperatorStencil transpose(const OperatorStencil& s, FieldGroup group, const GroupSpec& spec) {
  OperatorStencil t = s;
  const Flow flow = group_flow(group, spec);
  for (auto& e : t.entries) {
    if (group == FieldGroup::S) {
      Coords c(static_cast<std::size_t>(spec.dim_s()), 0.0);
      for (const auto& [k, p] : e.steps) flow(c, k, p);
      e.weight /= left_translation_jacobian(BaseGroup::S, spec, c.span());
    }
    std::reverse(e.steps.begin(), e.steps.end());
    for (auto& st : e.steps) st.second = -st.second;
  }
  return t;
}

cplx apply_stencil(const OperatorStencil& s, const PointFunction& f, const Flow& flow,
                   std::span<const double> x) {
  cplx sum = 0.0;
  Coords y;
  for (const auto& e : s.entries) {
    y = Coords(x);
    for (const auto& [k, p] : e.steps) flow(y, k, p);
    sum += e.weight * f(y.span());
  }
  return sum;
}

cplx apply_operator(const EnvelopingElement& u, const PointFunction& f, const Flow& flow,
                    std::span<const double> x, const StencilOptions& opts) {
  check_word_lengths(u);
  cplx sum = 0.0;
  for (const auto& t : u.terms()) {
    if (t.word.empty())
      sum += t.coefficient * f(x);
    else
      sum += t.coefficient * apply_stencil(word_stencil(t.word, opts.h, opts.order), f, flow, x);
  }
  return sum;
}

cplx apply_operator_transpose(const EnvelopingElement& u, const PointFunction& f, FieldGroup group,
                              const GroupSpec& spec, std::span<const double> x,
                              const StencilOptions& opts) {
  check_word_lengths(u);
  const Flow flow = group_flow(group, spec);
  cplx sum = 0.0;
  for (const auto& t : u.terms()) {
    if (t.word.empty()) {
      sum += t.coefficient * f(x);
    } else {
      const OperatorStencil st = transpose(word_stencil(t.word, opts.h, opts.order), group, spec);
      sum += t.coefficient * apply_stencil(st, f, flow, x);
    }
  }
  return sum;
}

cplx generator_field(int k, const PointFunction& f, FieldGroup group, const GroupSpec& spec,
                     std::span<const double> x, const StencilOptions& opts) {
  const std::size_t d = group == FieldGroup::M ? x.size() : field_dim(group, spec);
  if (k < 0 || static_cast<std::size_t>(k) >= d) throw InvalidArgument("generator index out of range");
  return apply_stencil(word_stencil({k}, opts.h, opts.order), f, group_flow(group, spec), x);
}

std::vector<cplx> apply_P(const EnvelopingElement& u, const TestFunction& f, FieldGroup group,
                          const GroupSpec& spec, const PointList& points,
                          const StencilOptions& opts) {
  if (group == FieldGroup::M) throw InvalidArgument("apply_P acts on N or S; use apply_Q on M");
  if (u.dim() != field_dim(group, spec) || f.dim() != u.dim()) {
    throw InvalidArgument("apply_P: operator, function and group dimensions differ");
  }
  const Flow flow = group_flow(group, spec);
  const PointFunction F = [&f](std::span<const double> x) { return f.evaluate(x); };
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = apply_operator(u, F, flow, points[i].span(), opts); });
  return out;
}

std::vector<cplx> apply_Q(const EnvelopingElement& u, const TestFunction& f,
                          const PointList& points, const StencilOptions& opts) {
  if (u.dim() != f.dim()) throw InvalidArgument("apply_Q: operator and function dimensions differ");
  const Flow flow = [](Coords& x, int k, double t) { x[static_cast<std::size_t>(k)] -= t; };
  const PointFunction F = [&f](std::span<const double> x) { return f.evaluate(x); };
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = apply_operator(u, F, flow, points[i].span(), opts); });
  return out;
}

std::vector<int> conv_generator_map(const ExtendedChart& chart) {
  const GroupSpec& s = chart.spec();
  std::vector<int> map;
  if (chart.kind() == ExtendedCase::H) {
    for (int k = 0; k < s.dim_s(); ++k) map.push_back(k);
    return map;
  }
  const int top = s.m() - 1;
  for (int k = 0; k < s.dim_n(); ++k) {
    const auto [i, j] = s.entry(k);
    map.push_back(j == s.m() - 1 ? i : top + GroupSpec::layer_position(i, j));
  }
  return map;
}

EnvelopingElement lie_bracket(FieldGroup group, const GroupSpec& spec, int i, int j) {
  const std::size_t dim = field_dim(group, spec);
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= dim || static_cast<std::size_t>(j) >= dim) {
    throw InvalidArgument("lie_bracket: generator index out of range");
  }
  EnvelopingElement out(dim);
  if (group == FieldGroup::M) return out;
  const int dn = spec.dim_n();
  const int last = spec.m() - 1;
  auto unit = [&](int a, int b) { return EnvelopingElement::generator(dim, spec.index(a, b)); };
  auto diag_weight = [&](int r, int k) {
    const auto [a, b] = spec.entry(k);
    return (a == r ? 1.0 : 0.0) - (b == r ? 1.0 : 0.0) + (b == last ? 1.0 : 0.0);
  };
  if (i < dn && j < dn) {
    const auto [a, b] = spec.entry(i);
    const auto [c, d] = spec.entry(j);
    if (b == c) out += unit(a, d);
    if (d == a) out -= unit(c, b);
  } else if (i >= dn && j < dn) {
    out += cplx(diag_weight(i - dn, j)) * EnvelopingElement::generator(dim, j);
  } else if (i < dn && j >= dn) {
    out -= cplx(diag_weight(j - dn, i)) * EnvelopingElement::generator(dim, i);
  }
  return out;
}

std::vector<bool> acting_generators(const ExtendedChart& chart) {
  const GroupSpec& spec = chart.spec();
  std::vector<bool> out(chart.base_dim(), false);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int kk = static_cast<int>(k);
    if (chart.kind() == ExtendedCase::K1)
      out[k] = spec.entry(kk).second != spec.m() - 1;
    else
      out[k] = kk >= spec.dim_n();
  }
  return out;
}

EnvelopingElement slot_normal_form(const EnvelopingElement& u, const ExtendedChart& chart) {
  const FieldGroup g = chart.base_group() == BaseGroup::N ? FieldGroup::N : FieldGroup::S;
  const GroupSpec spec = chart.spec();
  return normal_ordered(u, acting_generators(chart),
                        [g, spec](int i, int j) { return lie_bracket(g, spec, i, j); });
}

ResidualReport operator_identity_residual(const EnvelopingElement& u, const TestFunction& f,
                                          const ExtendedChart& chart, const PointList& points,
                                          const StencilOptions& p_opts,
                                          const StencilOptions& q_opts) {
  if (u.dim() != chart.base_dim()) {
    throw InvalidArgument("operator dimension does not match the base group");
  }
  check_word_lengths(u);
  const GroupSpec spec = chart.spec();
  const PointFunction F = [&](std::span<const double> c) { return tilde_eval(f, chart, c); };

  const Flow base_flow = group_flow(chart.base_group() == BaseGroup::N ? FieldGroup::N : FieldGroup::S, spec);
  const Flow p_flow = [&](Coords& c, int k, double t) {
    Coords base = chart.base_coords(c.span());
    const Coords shift(chart.shift_of(c.span()));
    base_flow(base, k, t);
    c = chart.from_base(base.span(), shift.span());
  };

  const std::vector<int> map = conv_generator_map(chart);
  const auto dn = spec.dim_n();
  const Flow q_flow = [&](Coords& c, int k, double t) {
    if (chart.kind() == ExtendedCase::H && k < dn)
      unipotent_flow(spec, c.data(), k, t);
    else
      c[static_cast<std::size_t>(map[static_cast<std::size_t>(k)])] -= t;
  };

  const EnvelopingElement uq = slot_normal_form(u, chart);
  ResidualReport r;
  std::vector<double> res(points.size()), scale(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const cplx p = apply_operator(u, F, p_flow, points[i].span(), p_opts);
    const cplx q = apply_operator(uq, F, q_flow, points[i].span(), q_opts);
    res[i] = std::abs(p - q);
    scale[i] = std::abs(q);
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    r.residual = std::max(r.residual, res[i]);
    r.scale = std::max(r.scale, scale[i]);
  }
  return r;
}

cplx symbol_at(const Polynomial& p, std::span<const double> lambda, const GridSpec& grid,
               SymbolMode mode) {
  if (mode == SymbolMode::Exact) return p.evaluate(lambda);
  Coords sigma(lambda);
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const double h = grid[k].step();
    sigma[k] = 2.0 * std::sin(0.5 * lambda[k] * h) / h;
  }
  return p.evaluate(sigma.span());
}

GridFunction fundamental_solution_abelian(const EnvelopingElement& u, const GridSpec& grid,
                                          double epsilon, SymbolMode mode) {
  if (u.dim() != grid.size()) throw InvalidArgument("operator and grid dimensions differ");
  if (!(epsilon > 0.0)) throw InvalidArgument("regularisation epsilon must be positive");
  const Polynomial p = symbol(u);
  if (p.is_zero()) throw ZeroOperatorError();
  GridFunction hat(grid, Domain::Frequency);
  const double eps2 = epsilon * epsilon;
  parallel_blocks(hat.size(), kReduceBlock, [&](std::size_t b, std::size_t e, std::size_t) {
    Coords lambda(grid.size());
    for (std::size_t i = b; i < e; ++i) {
      grid_frequency(grid, i, lambda);
      const cplx s = symbol_at(p, lambda.span(), grid, mode);
      hat.samples[i] = std::conj(s) / (std::norm(s) + eps2);
    }
  });
  return fourier_inverse(hat);
}

FundamentalSolutionReport fundamental_solution_group(const EnvelopingElement& u, BaseGroup group,
                                                     const GroupSpec& spec,
                                                     const FundamentalSolutionOptions& opts) {
  if (group == BaseGroup::N && spec.m() > 3) {
    throw DomainError("fundamental solutions on N are supported for m = 2 and m = 3");
  }
  if (group == BaseGroup::S && spec.m() != 2) {
    throw DomainError("fundamental solutions on S are supported for m = 2");
  }
  const ExtendedChart chart(group == BaseGroup::N ? ExtendedCase::K1 : ExtendedCase::H, spec);
  if (u.dim() != chart.base_dim()) throw InvalidArgument("operator dimension does not match the group");
  if (symbol(u).is_zero()) throw ZeroOperatorError();

  const std::vector<int> map = conv_generator_map(chart);
  const EnvelopingElement uc = slot_normal_form(u, chart).relabeled(map, chart.conv_dim());
  const Polynomial pc = symbol(uc);
  GridSpec grid;
  for (std::size_t k = 0; k < chart.conv_dim(); ++k) {
    grid.emplace_back(0.0, opts.half_width, pc.depends_on(k) ? opts.points : opts.flat_points);
  }

  FundamentalSolutionReport rep;
  rep.solution = fundamental_solution_abelian(uc, grid, opts.epsilon, opts.mode);
  rep.picture = group == BaseGroup::N ? "M" : "T";
  rep.test_sigmas = opts.test_sigmas;

  const FieldGroup field = group == BaseGroup::N ? FieldGroup::N : FieldGroup::S;
  const double vol = cell_volume(grid);
  for (double sigma : opts.test_sigmas) {
    const TestFunction phi = TestFunction::gaussian(chart.base_dim(), 1.0 / (sigma * sigma));
    const PointFunction F = [&phi](std::span<const double> x) { return phi.evaluate(x); };
    const Coords origin(chart.base_dim(), 0.0);
    const cplx at_identity = phi.evaluate(origin.span());
    const cplx pairing = deterministic_sum<cplx>(rep.solution.size(), [&](std::size_t i) {
      const cplx e = rep.solution.samples[i];
      Coords c(grid.size());
      grid_node(grid, i, c);
      const Coords x = gamma_inv_point(chart.kind(), spec, c.span());
      const double jac = left_translation_jacobian(group, spec, x.span());
      return e * apply_operator_transpose(u, F, field, spec, x.span(), opts.transpose) * jac;
    }) * vol;
    rep.weak_residuals.push_back(std::abs(pairing - at_identity));
  }
  return rep;
}

}  // namespace nilharm
