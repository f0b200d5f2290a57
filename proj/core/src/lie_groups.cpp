#include "nilharm/lie_groups.hpp"

#include <cmath>
#include <string>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {

void require_same(const GroupSpec& a, const GroupSpec& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": group size mismatch");
}

}  // namespace

GroupSpec::GroupSpec(int m) : m_(m) {
  if (m < 2 || m > kMaxMatrixSize) {
    throw InvalidArgument("matrix size m must lie in [2, " + std::to_string(kMaxMatrixSize) +
                          "], got " + std::to_string(m));
  }
  for (auto& row : index_) row.fill(-1);
  int k = 0;
  for (int d = 1; d < m; ++d) {
    for (int i = 0; i + d < m; ++i) {
      index_[i][i + d] = k;
      entry_[k] = {i, i + d};
      ++k;
    }
  }
}

UnipotentElement::UnipotentElement(GroupSpec spec) : spec_(spec), coords_(spec.dim_n(), 0.0) {}

UnipotentElement::UnipotentElement(GroupSpec spec, std::span<const double> coords)
    : spec_(spec), coords_(coords) {
  if (coords.size() != static_cast<std::size_t>(spec.dim_n())) {
    throw InvalidArgument("expected " + std::to_string(spec.dim_n()) + " coordinates, got " +
                          std::to_string(coords.size()));
  }
}

double UnipotentElement::at(int i, int j) const {
  if (i == j) return 1.0;
  if (i > j) return 0.0;
  return coords_[spec_.index(i, j)];
}

std::vector<double> UnipotentElement::to_matrix() const {
  const int m = spec_.m();
  std::vector<double> out(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) out[i * m + j] = at(i, j);
  return out;
}

LayerVector::LayerVector(GroupSpec spec, std::span<const double> flat) : spec_(spec), flat_(flat) {
  if (flat.size() != static_cast<std::size_t>(spec.dim_n())) {
    throw InvalidArgument("layer vector length " + std::to_string(flat.size()) +
                          " does not match dim N = " + std::to_string(spec.dim_n()));
  }
}

LayerVector::LayerVector(GroupSpec spec, const std::vector<std::vector<double>>& layers)
    : spec_(spec) {
  if (layers.size() != static_cast<std::size_t>(spec.m() - 1)) {
    throw InvalidArgument("expected " + std::to_string(spec.m() - 1) + " layers, got " +
                          std::to_string(layers.size()));
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].size() != l + 1) {
      throw InvalidArgument("layer " + std::to_string(l + 1) + " must have length " +
                            std::to_string(l + 1));
    }
    for (double v : layers[l]) flat_.push_back(v);
  }
}

std::span<const double> LayerVector::layer(int l) const {
  if (l < 1 || l >= spec_.m()) throw InvalidArgument("layer index out of range");
  return flat_.span().subspan(static_cast<std::size_t>(GroupSpec::layer_offset(l)),
                              static_cast<std::size_t>(l));
}

DiagonalElement::DiagonalElement(GroupSpec spec) : spec_(spec), log_(spec.dim_a(), 0.0) {}

DiagonalElement::DiagonalElement(GroupSpec spec, std::span<const double> log_coords)
    : spec_(spec), log_(log_coords) {
  if (log_coords.size() != static_cast<std::size_t>(spec.dim_a())) {
    throw InvalidArgument("expected " + std::to_string(spec.dim_a()) + " log coordinates, got " +
                          std::to_string(log_coords.size()));
  }
}

double DiagonalElement::log_entry(int i) const {
  if (i < spec_.m() - 1) return log_[i];
  double s = 0.0;
  for (double t : log_) s += t;
  return -s;
}

double DiagonalElement::entry(int i) const { return std::exp(log_entry(i)); }

double DiagonalElement::ratio(int i, int j) const { return std::exp(log_entry(i) - log_entry(j)); }

SolvableElement::SolvableElement(UnipotentElement n_part, DiagonalElement a_part)
    : n(std::move(n_part)), a(std::move(a_part)) {
  require_same(n.spec(), a.spec(), "SolvableElement");
}

SolvableElement SolvableElement::identity(GroupSpec spec) {
  return {UnipotentElement(spec), DiagonalElement(spec)};
}

Coords SolvableElement::coords() const {
  Coords out(n.coords());
  for (double t : a.log_coords()) out.push_back(t);
  return out;
}

SolvableElement SolvableElement::from_coords(GroupSpec spec, std::span<const double> coords) {
  if (coords.size() != static_cast<std::size_t>(spec.dim_s())) {
    throw InvalidArgument("expected " + std::to_string(spec.dim_s()) + " S coordinates, got " +
                          std::to_string(coords.size()));
  }
  const auto dn = static_cast<std::size_t>(spec.dim_n());
  return {UnipotentElement(spec, coords.first(dn)), DiagonalElement(spec, coords.subspan(dn))};
}

ExtendedPoint::ExtendedPoint(UnipotentElement base, std::span<const double> shift)
    : kind_(ExtendedCase::K1), base_(std::move(base)), shift_(shift) {
  if (shift.size() != shift_length(kind_, spec())) {
    throw InvalidArgument("K1 shift must have length " +
                          std::to_string(shift_length(kind_, spec())));
  }
}

ExtendedPoint::ExtendedPoint(SolvableElement base, std::span<const double> shift)
    : kind_(ExtendedCase::H), base_(std::move(base)), shift_(shift) {
  if (shift.size() != shift_length(kind_, spec())) {
    throw InvalidArgument("H shift must have length " +
                          std::to_string(shift_length(kind_, spec())));
  }
}

const GroupSpec& ExtendedPoint::spec() const {
  return kind_ == ExtendedCase::K1 ? n_base().spec() : s_base().spec();
}

std::size_t ExtendedPoint::shift_length(ExtendedCase kind, const GroupSpec& spec) {
  return static_cast<std::size_t>(kind == ExtendedCase::K1 ? spec.dim_n() - (spec.m() - 1)
                                                            : spec.m() - 1);
}

UnipotentElement unipotent_mul(const UnipotentElement& g, const UnipotentElement& h) {
  require_same(g.spec(), h.spec(), "unipotent_mul");
  const GroupSpec& s = g.spec();
  const int m = s.m();
  UnipotentElement out(s);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double v = g.at(i, j) + h.at(i, j);
      for (int k = i + 1; k < j; ++k) v += g.at(i, k) * h.at(k, j);
      out.set(i, j, v);
    }
  }
  return out;
}

UnipotentElement unipotent_inv(const UnipotentElement& g) {
  const GroupSpec& s = g.spec();
  const int m = s.m();
  UnipotentElement out(s);
  for (int i = m - 2; i >= 0; --i) {
    for (int j = i + 1; j < m; ++j) {
      double v = -g.at(i, j);
      for (int k = i + 1; k < j; ++k) v -= g.at(i, k) * out.at(k, j);
      out.set(i, j, v);
    }
  }
  return out;
}

LayerVector layer_decompose(const UnipotentElement& g) {
  const GroupSpec& s = g.spec();
  Coords flat(static_cast<std::size_t>(s.dim_n()), 0.0);
  for (int j = 1; j < s.m(); ++j)
    for (int i = 0; i < j; ++i) flat[GroupSpec::layer_position(i, j)] = g.at(i, j);
  return {s, flat.span()};
}

// The product of column embeddings with higher columns on the left has no
// cross terms, so the assembled matrix is a plain copy of the layers.
UnipotentElement layer_compose(const LayerVector& v) {
  const GroupSpec& s = v.spec();
  UnipotentElement out(s);
  const auto flat = v.flat();
  for (int j = 1; j < s.m(); ++j)
    for (int i = 0; i < j; ++i) out.set(i, j, flat[GroupSpec::layer_position(i, j)]);
  return out;
}

UnipotentElement conjugate(const UnipotentElement& g, const UnipotentElement& h) {
  require_same(g.spec(), h.spec(), "conjugate");
  return unipotent_mul(unipotent_mul(g, h), unipotent_inv(g));
}

UnipotentElement conjugate(const DiagonalElement& a, const UnipotentElement& h) {
  require_same(a.spec(), h.spec(), "conjugate");
  const GroupSpec& s = h.spec();
  std::array<double, kMaxMatrixSize> T{};
  for (int i = 0; i < s.m(); ++i) T[i] = a.log_entry(i);
  UnipotentElement out(h);
  auto& c = out.mutable_coords();
  for (int k = 0; k < s.dim_n(); ++k) {
    const auto [i, j] = s.entry(k);
    c[k] *= std::exp(T[i] - T[j]);
  }
  return out;
}

DiagonalElement diagonal_mul(const DiagonalElement& a, const DiagonalElement& b) {
  require_same(a.spec(), b.spec(), "diagonal_mul");
  DiagonalElement out(a);
  auto& t = out.mutable_log_coords();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += b.log_coords()[i];
  return out;
}

DiagonalElement diagonal_inv(const DiagonalElement& a) {
  DiagonalElement out(a);
  for (double& t : out.mutable_log_coords()) t = -t;
  return out;
}

SolvableElement solvable_mul(const SolvableElement& p, const SolvableElement& q) {
  require_same(p.spec(), q.spec(), "solvable_mul");
  return {unipotent_mul(p.n, conjugate(p.a, q.n)), diagonal_mul(p.a, q.a)};
}

SolvableElement solvable_inv(const SolvableElement& p) {
  const DiagonalElement ainv = diagonal_inv(p.a);
  return {conjugate(ainv, unipotent_inv(p.n)), ainv};
}

namespace {

Coords add_shifts(std::span<const double> a, std::span<const double> b) {
  Coords out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

ExtendedPoint extended_mul(const ExtendedPoint& p, const ExtendedPoint& q) {
  if (p.kind() != q.kind()) throw InvalidArgument("extended_mul: K1 and H points cannot be mixed");
  require_same(p.spec(), q.spec(), "extended_mul");
  const Coords shift = add_shifts(p.shift(), q.shift());
  if (p.kind() == ExtendedCase::K1) return {unipotent_mul(p.n_base(), q.n_base()), shift.span()};
  return {solvable_mul(p.s_base(), q.s_base()), shift.span()};
}

ExtendedPoint extended_inv(const ExtendedPoint& p) {
  Coords shift(p.shift());
  for (double& v : shift) v = -v;
  if (p.kind() == ExtendedCase::K1) return {unipotent_inv(p.n_base()), shift.span()};
  return {solvable_inv(p.s_base()), shift.span()};
}

ExtendedPoint extended_identity(ExtendedCase kind, GroupSpec spec) {
  const Coords zero(ExtendedPoint::shift_length(kind, spec), 0.0);
  if (kind == ExtendedCase::K1) return {UnipotentElement(spec), zero.span()};
  return {SolvableElement::identity(spec), zero.span()};
}

UnipotentElement unipotent_generator_exp(GroupSpec spec, int k, double t) {
  if (k < 0 || k >= spec.dim_n()) throw InvalidArgument("generator index out of range");
  UnipotentElement out(spec);
  out.mutable_coords()[k] = t;
  return out;
}

void left_mul_generator(UnipotentElement& x, int k, double t) {
  const GroupSpec& s = x.spec();
  const auto [i, j] = s.entry(k);
  // Row i gains t times row j.
  for (int c = j; c < s.m(); ++c) {
    x.set(i, c, x.at(i, c) + t * x.at(j, c));
  }
}

UnipotentElement from_top_and_acting(GroupSpec spec, std::span<const double> top,
                                     std::span<const double> acting) {
  const auto top_len = static_cast<std::size_t>(spec.m() - 1);
  const auto act_len = static_cast<std::size_t>(spec.dim_n()) - top_len;
  if (top.size() != top_len || acting.size() != act_len) {
    throw InvalidArgument("top/acting lengths do not match the group size");
  }
  Coords flat(acting);
  for (double v : top) flat.push_back(v);
  return layer_compose(LayerVector(spec, flat.span()));
}

UnipotentElement acting_embedding(GroupSpec spec, std::span<const double> shift) {
  const Coords top(static_cast<std::size_t>(spec.m() - 1), 0.0);
  return from_top_and_acting(spec, top.span(), shift);
}

std::pair<Coords, Coords> top_and_acting(const UnipotentElement& g) {
  const LayerVector v = layer_decompose(g);
  const auto flat = v.flat();
  const auto act_len = static_cast<std::size_t>(g.spec().dim_n() - (g.spec().m() - 1));
  return {Coords(flat.subspan(act_len)), Coords(flat.first(act_len))};
}

}  // namespace nilharm

namespace nilharm {

std::size_t base_dim(BaseGroup group, const GroupSpec& spec) {
  return static_cast<std::size_t>(group == BaseGroup::N ? spec.dim_n() : spec.dim_s());
}

Coords base_mul(BaseGroup group, const GroupSpec& spec, std::span<const double> a,
                std::span<const double> b) {
  if (group == BaseGroup::N) {
    return Coords(unipotent_mul(UnipotentElement(spec, a), UnipotentElement(spec, b)).coords());
  }
  return solvable_mul(SolvableElement::from_coords(spec, a), SolvableElement::from_coords(spec, b))
      .coords();
}

Coords base_inv(BaseGroup group, const GroupSpec& spec, std::span<const double> a) {
  if (group == BaseGroup::N) return Coords(unipotent_inv(UnipotentElement(spec, a)).coords());
  return solvable_inv(SolvableElement::from_coords(spec, a)).coords();
}

double left_translation_jacobian(BaseGroup group, const GroupSpec& spec, std::span<const double> a) {
  if (group == BaseGroup::N) return 1.0;
  const DiagonalElement d(spec, a.subspan(static_cast<std::size_t>(spec.dim_n())));
  double log_det = 0.0;
  for (int k = 0; k < spec.dim_n(); ++k) {
    const auto [i, j] = spec.entry(k);
    log_det += d.log_entry(i) - d.log_entry(j);
  }
  return std::exp(log_det);
}

}  // namespace nilharm
