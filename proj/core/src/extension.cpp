#include "nilharm/extension.hpp"

#include <Eigen/Dense>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {

std::size_t acting_len(const GroupSpec& s) { return static_cast<std::size_t>(s.dim_n() - (s.m() - 1)); }
std::size_t top_len(const GroupSpec& s) { return static_cast<std::size_t>(s.m() - 1); }

UnipotentElement top_element(const GroupSpec& s, std::span<const double> v) {
  const Coords zero(acting_len(s), 0.0);
  return from_top_and_acting(s, v, zero.span());
}

Coords conjugated_top(const UnipotentElement& g, const GroupSpec& s, std::span<const double> v) {
  return top_and_acting(conjugate(g, top_element(s, v))).first;
}

Coords diag_twist(const GroupSpec& s, std::span<const double> n, std::span<const double> log_a) {
  return Coords(conjugate(DiagonalElement(s, log_a), UnipotentElement(s, n)).coords());
}

Coords negated(std::span<const double> x) {
  Coords out(x);
  for (double& v : out) v = -v;
  return out;
}

}  // namespace

ExtendedChart::ExtendedChart(ExtendedCase kind, GroupSpec spec) : kind_(kind), spec_(spec) {}

std::size_t ExtendedChart::conv_dim() const {
  return kind_ == ExtendedCase::K1 ? static_cast<std::size_t>(spec_.dim_n())
                                   : static_cast<std::size_t>(spec_.dim_s());
}

std::size_t ExtendedChart::param_dim() const {
  return kind_ == ExtendedCase::K1 ? acting_len(spec_) : top_len(spec_);
}

std::size_t ExtendedChart::base_dim() const {
  return kind_ == ExtendedCase::K1 ? static_cast<std::size_t>(spec_.dim_n())
                                   : static_cast<std::size_t>(spec_.dim_s());
}

std::span<const double> ExtendedChart::shift_of(std::span<const double> c) const {
  if (kind_ == ExtendedCase::K1) return c.subspan(top_len(spec_), acting_len(spec_));
  return c.subspan(static_cast<std::size_t>(spec_.dim_n()), top_len(spec_));
}

Coords ExtendedChart::base_coords(std::span<const double> c) const {
  if (c.size() != dim()) throw InvalidArgument("extended chart point has the wrong dimension");
  if (kind_ == ExtendedCase::K1) {
    const auto v = c.first(top_len(spec_));
    const auto x = c.subspan(top_len(spec_) + acting_len(spec_));
    return Coords(from_top_and_acting(spec_, v, x).coords());
  }
  const auto dn = static_cast<std::size_t>(spec_.dim_n());
  Coords out(c.first(dn));
  for (double b : c.subspan(dn + top_len(spec_))) out.push_back(b);
  return out;
}

Coords ExtendedChart::from_base(std::span<const double> base, std::span<const double> shift) const {
  if (base.size() != base_dim() || shift.size() != param_dim()) {
    throw InvalidArgument("from_base: dimension mismatch");
  }
  Coords out;
  if (kind_ == ExtendedCase::K1) {
    const auto [top, acting] = top_and_acting(UnipotentElement(spec_, base));
    for (double v : top) out.push_back(v);
    for (double v : shift) out.push_back(v);
    for (double v : acting) out.push_back(v);
    return out;
  }
  const auto dn = static_cast<std::size_t>(spec_.dim_n());
  for (double v : base.first(dn)) out.push_back(v);
  for (double v : shift) out.push_back(v);
  for (double v : base.subspan(dn)) out.push_back(v);
  return out;
}

ExtendedPoint ExtendedChart::to_point(std::span<const double> c) const {
  const Coords base = base_coords(c);
  if (kind_ == ExtendedCase::K1) return {UnipotentElement(spec_, base.span()), shift_of(c)};
  return {SolvableElement::from_coords(spec_, base.span()), shift_of(c)};
}

Coords ExtendedChart::to_coords(const ExtendedPoint& p) const {
  if (p.kind() != kind_ || !(p.spec() == spec_)) throw InvalidArgument("point does not fit chart");
  if (kind_ == ExtendedCase::K1) return from_base(p.n_base().coords(), p.shift());
  return from_base(p.s_base().coords().span(), p.shift());
}

Coords iota_apply(ExtendedCase kind, const GroupSpec& spec, std::span<const double> shift,
                  std::span<const double> base) {
  if (kind == ExtendedCase::K1) {
    return Coords(unipotent_mul(acting_embedding(spec, shift), UnipotentElement(spec, base)).coords());
  }
  const auto dn = static_cast<std::size_t>(spec.dim_n());
  Coords out = diag_twist(spec, base.first(dn), shift);
  const auto b = base.subspan(dn);
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b[i] + shift[i]);
  return out;
}

cplx tilde_eval_base(const TestFunction& f, ExtendedCase kind, const GroupSpec& spec,
                     std::span<const double> base, std::span<const double> shift) {
  const Coords g = iota_apply(kind, spec, shift, base);
  return f.evaluate(g.span());
}

cplx tilde_eval(const TestFunction& f, const ExtendedPoint& p) {
  if (p.kind() == ExtendedCase::K1) {
    return tilde_eval_base(f, p.kind(), p.spec(), p.n_base().coords(), p.shift());
  }
  const Coords base = p.s_base().coords();
  return tilde_eval_base(f, p.kind(), p.spec(), base.span(), p.shift());
}

cplx tilde_eval(const TestFunction& f, const ExtendedChart& chart, std::span<const double> c) {
  const Coords base = chart.base_coords(c);
  return tilde_eval_base(f, chart.kind(), chart.spec(), base.span(), chart.shift_of(c));
}

double invariance_residual(const TestFunction& f, const ExtendedPoint& p,
                           std::span<const double> s) {
  const std::size_t k = ExtendedPoint::shift_length(p.kind(), p.spec());
  if (s.size() != k) throw InvalidArgument("acting element has the wrong length");
  Coords shift(p.shift());
  for (std::size_t i = 0; i < k; ++i) shift[i] -= s[i];
  const cplx before = tilde_eval(f, p);
  cplx after;
  if (p.kind() == ExtendedCase::K1) {
    const Coords base = iota_apply(p.kind(), p.spec(), s, p.n_base().coords());
    after = tilde_eval(f, ExtendedPoint(UnipotentElement(p.spec(), base.span()), shift.span()));
  } else {
    const Coords sb = p.s_base().coords();
    const Coords base = iota_apply(p.kind(), p.spec(), s, sb.span());
    after = tilde_eval(f, ExtendedPoint(SolvableElement::from_coords(p.spec(), base.span()),
                                        shift.span()));
  }
  return std::abs(after - before);
}

Coords twist(ExtendedCase kind, const GroupSpec& spec, std::span<const double> v,
             std::span<const double> u) {
  if (kind == ExtendedCase::K1) return conjugated_top(acting_embedding(spec, u), spec, v);
  return diag_twist(spec, v, u);
}

double twist_jacobian(ExtendedCase kind, const GroupSpec& spec, std::span<const double> u) {
  const std::size_t d = kind == ExtendedCase::K1 ? top_len(spec) : static_cast<std::size_t>(spec.dim_n());
  Eigen::MatrixXd J(d, d);
  Coords e(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    e[c] = 1.0;
    const Coords col = twist(kind, spec, e.span(), u);
    for (std::size_t r = 0; r < d; ++r) J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
    e[c] = 0.0;
  }
  return J.determinant();
}

Coords restriction_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> mc) {
  if (kind == ExtendedCase::K1) {
    const auto v = mc.first(top_len(spec));
    const auto u = mc.subspan(top_len(spec));
    return iota_apply(kind, spec, u, top_element(spec, v).coords());
  }
  const auto dn = static_cast<std::size_t>(spec.dim_n());
  Coords base(mc.first(dn));
  for (std::size_t i = 0; i < top_len(spec); ++i) base.push_back(0.0);
  return iota_apply(kind, spec, mc.subspan(dn), base.span());
}

PointFunction restrict_to_M(const TestFunction& f, ExtendedCase kind, const GroupSpec& spec) {
  return [f, kind, spec](std::span<const double> mc) {
    const Coords p = restriction_point(kind, spec, mc);
    return f.evaluate(p.span());
  };
}

Coords gamma_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> base) {
  if (kind == ExtendedCase::K1) {
    const auto [w, x] = top_and_acting(UnipotentElement(spec, base));
    const UnipotentElement ix_inv = unipotent_inv(acting_embedding(spec, x.span()));
    Coords out = conjugated_top(ix_inv, spec, w.span());
    for (double v : x) out.push_back(v);
    return out;
  }
  const auto dn = static_cast<std::size_t>(spec.dim_n());
  const auto b = base.subspan(dn);
  const Coords nb = negated(b);
  Coords out = diag_twist(spec, base.first(dn), nb.span());
  for (double v : b) out.push_back(v);
  return out;
}

Coords gamma_inv_point(ExtendedCase kind, const GroupSpec& spec, std::span<const double> mc) {
  if (kind == ExtendedCase::K1) {
    const auto v = mc.first(top_len(spec));
    const auto u = mc.subspan(top_len(spec));
    const Coords w = twist(kind, spec, v, u);
    return Coords(from_top_and_acting(spec, w.span(), u).coords());
  }
  const auto dn = static_cast<std::size_t>(spec.dim_n());
  const auto u = mc.subspan(dn);
  Coords out = diag_twist(spec, mc.first(dn), u);
  for (double v : u) out.push_back(v);
  return out;
}

PointFunction gamma(PointFunction h, ExtendedCase kind, const GroupSpec& spec) {
  return [h = std::move(h), kind, spec](std::span<const double> base) {
    const Coords mc = gamma_point(kind, spec, base);
    return h(mc.span());
  };
}

PointFunction gamma_inv(PointFunction g, ExtendedCase kind, const GroupSpec& spec) {
  return [g = std::move(g), kind, spec](std::span<const double> mc) {
    const Coords base = gamma_inv_point(kind, spec, mc);
    return g(base.span());
  };
}

}  // namespace nilharm
