#pragma once

// Exact arithmetic for the unipotent group N of unit upper-triangular m x m
// matrices, the positive diagonal group A (determinant one), the solvable
// group S = N x| A, and the two extended groups used by the invariant
// extension: K1 (N with an abelian copy of its acting layers) and
// H = S x A.
//
// Coordinates on N are the strictly-upper-triangular entries in graded
// order: first superdiagonal top to bottom, then the second, and so on. For
// m = 3 this is the usual Heisenberg chart (x, y, z) = (n12, n23, n13).

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "nilharm/fixed_vector.hpp"

namespace nilharm {

inline constexpr int kMaxMatrixSize = 6;
inline constexpr std::size_t kMaxCoords = 32;

using Coords = FixedVector<double, kMaxCoords>;

class GroupSpec {
 public:
  explicit GroupSpec(int m);

  int m() const { return m_; }
  int dim_n() const { return m_ * (m_ - 1) / 2; }
  int dim_a() const { return m_ - 1; }
  /// Dimension of S = N x| A in (N coordinates, log A coordinates).
  int dim_s() const { return dim_n() + dim_a(); }

  /// Graded coordinate index of the 0-based entry (i, j), i < j.
  int index(int i, int j) const { return index_[i][j]; }
  /// Inverse of index().
  std::pair<int, int> entry(int k) const { return entry_[k]; }

  /// Position of entry (i, j) in the flattened layer vector (layer of column
  /// j, rows top to bottom).
  static int layer_position(int i, int j) { return j * (j - 1) / 2 + i; }
  /// Offset of layer `layer` (1-based, length `layer`) in the flat layout.
  static int layer_offset(int layer) { return layer * (layer - 1) / 2; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.m_ == b.m_; }

 private:
  int m_;
  std::array<std::array<int, kMaxMatrixSize>, kMaxMatrixSize> index_{};
  std::array<std::pair<int, int>, kMaxCoords> entry_{};
};

class UnipotentElement {
 public:
  explicit UnipotentElement(GroupSpec spec);  // identity
  UnipotentElement(GroupSpec spec, std::span<const double> coords);

  static UnipotentElement identity(GroupSpec spec) { return UnipotentElement(spec); }

  const GroupSpec& spec() const { return spec_; }
  std::span<const double> coords() const { return coords_.span(); }
  Coords& mutable_coords() { return coords_; }

  /// Matrix entry (i, j), 0-based, including the unit diagonal and zeros below.
  double at(int i, int j) const;
  void set(int i, int j, double value) { coords_[spec_.index(i, j)] = value; }

  /// Dense row-major m x m matrix.
  std::vector<double> to_matrix() const;

 private:
  GroupSpec spec_;
  Coords coords_;
};

/// Column-layer view of an element of N: layer l (1-based) holds column l+1
/// rows 1..l, top to bottom, flattened in layer order.
class LayerVector {
 public:
  LayerVector(GroupSpec spec, std::span<const double> flat);
  LayerVector(GroupSpec spec, const std::vector<std::vector<double>>& layers);

  const GroupSpec& spec() const { return spec_; }
  std::span<const double> flat() const { return flat_.span(); }
  std::span<const double> layer(int l) const;
  int layer_count() const { return spec_.m() - 1; }

 private:
  GroupSpec spec_;
  Coords flat_;
};

class DiagonalElement {
 public:
  explicit DiagonalElement(GroupSpec spec);  // identity
  DiagonalElement(GroupSpec spec, std::span<const double> log_coords);

  const GroupSpec& spec() const { return spec_; }
  std::span<const double> log_coords() const { return log_.span(); }
  Coords& mutable_log_coords() { return log_; }

  /// Log of diagonal entry i; the last one is minus the sum of the others.
  double log_entry(int i) const;
  double entry(int i) const;
  /// a_i / a_j computed as exp(T_i - T_j).
  double ratio(int i, int j) const;

 private:
  GroupSpec spec_;
  Coords log_;
};

struct SolvableElement {
  UnipotentElement n;
  DiagonalElement a;

  SolvableElement(UnipotentElement n_part, DiagonalElement a_part);
  static SolvableElement identity(GroupSpec spec);

  const GroupSpec& spec() const { return n.spec(); }
  /// (N coordinates, log A coordinates).
  Coords coords() const;
  static SolvableElement from_coords(GroupSpec spec, std::span<const double> coords);
};

enum class ExtendedCase { K1, H };

/// A point of K1 (base in N) or H (base in S) with its abelian shift.
class ExtendedPoint {
 public:
  ExtendedPoint(UnipotentElement base, std::span<const double> shift);
  ExtendedPoint(SolvableElement base, std::span<const double> shift);

  ExtendedCase kind() const { return kind_; }
  const GroupSpec& spec() const;
  const UnipotentElement& n_base() const { return std::get<UnipotentElement>(base_); }
  const SolvableElement& s_base() const { return std::get<SolvableElement>(base_); }
  std::span<const double> shift() const { return shift_.span(); }

  static std::size_t shift_length(ExtendedCase kind, const GroupSpec& spec);

 private:
  ExtendedCase kind_;
  std::variant<UnipotentElement, SolvableElement> base_;
  Coords shift_;
};

UnipotentElement unipotent_mul(const UnipotentElement& g, const UnipotentElement& h);
UnipotentElement unipotent_inv(const UnipotentElement& g);

LayerVector layer_decompose(const UnipotentElement& g);
UnipotentElement layer_compose(const LayerVector& v);

/// g h g^-1.
UnipotentElement conjugate(const UnipotentElement& g, const UnipotentElement& h);
/// rho(a) h: entry (i, j) scaled by a_i / a_j.
UnipotentElement conjugate(const DiagonalElement& a, const UnipotentElement& h);

DiagonalElement diagonal_mul(const DiagonalElement& a, const DiagonalElement& b);
DiagonalElement diagonal_inv(const DiagonalElement& a);

SolvableElement solvable_mul(const SolvableElement& p, const SolvableElement& q);
SolvableElement solvable_inv(const SolvableElement& p);

ExtendedPoint extended_mul(const ExtendedPoint& p, const ExtendedPoint& q);
ExtendedPoint extended_inv(const ExtendedPoint& p);
ExtendedPoint extended_identity(ExtendedCase kind, GroupSpec spec);

/// exp(t E_k) for the graded coordinate direction k: identity plus t at that entry.
UnipotentElement unipotent_generator_exp(GroupSpec spec, int k, double t);

/// Left multiplication by exp(t E_k) in place, without building the factor.
void left_mul_generator(UnipotentElement& x, int k, double t);

/// K1 embedding of the acting-layer shift: layer_compose with the top layer
/// zero and acting layers (1..m-2) equal to `shift`.
UnipotentElement acting_embedding(GroupSpec spec, std::span<const double> shift);

/// Element of N built from its top layer (column m) and acting layers.
UnipotentElement from_top_and_acting(GroupSpec spec, std::span<const double> top,
                                     std::span<const double> acting);
/// Split of an element into (top layer, acting layers).
std::pair<Coords, Coords> top_and_acting(const UnipotentElement& g);

/// Coordinate-level group law on N or S (S coordinates: N entries, then log A).
enum class BaseGroup { N, S };

std::size_t base_dim(BaseGroup group, const GroupSpec& spec);
Coords base_mul(BaseGroup group, const GroupSpec& spec, std::span<const double> a,
                std::span<const double> b);
Coords base_inv(BaseGroup group, const GroupSpec& spec, std::span<const double> a);
/// Jacobian of x -> a x for the coordinate measure (1 on N, det rho(a) on S).
double left_translation_jacobian(BaseGroup group, const GroupSpec& spec, std::span<const double> a);

}  // namespace nilharm
