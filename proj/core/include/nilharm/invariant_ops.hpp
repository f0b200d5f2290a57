#pragma once

// Enveloping-algebra elements realised as finite-difference operators:
// P_u on N or S (generators act through left translation by exp(-t E)),
// Q_u on the abelian pictures (generators act as -d/dx), the operator
// identity on invariant extensions, and fundamental solutions by
// regularised Fourier division.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nilharm/enveloping.hpp"
#include "nilharm/extension.hpp"
#include "nilharm/grid.hpp"
#include "nilharm/harmonic.hpp"

namespace nilharm {

inline constexpr std::size_t kMaxWordLength = 4;

enum class FieldGroup { N, S, M };

/// In-place x <- exp(-t E_k) x.
using Flow = std::function<void(Coords&, int, double)>;

Flow group_flow(FieldGroup group, const GroupSpec& spec);
std::size_t field_dim(FieldGroup group, const GroupSpec& spec);

struct StencilEntry {
  std::vector<std::pair<int, double>> steps;  // (generator, flow parameter), applied in order
  double weight = 0.0;
};

struct OperatorStencil {
  std::vector<StencilEntry> entries;
  double h = 0.0;
  int order = 2;
};

/// Central-difference realisation of a word; order 2 or 4.
OperatorStencil word_stencil(const Word& word, double h, int order);
/// Bilinear transpose: reversed flow order, negated parameters, and on S the
/// left-translation Jacobian.
OperatorStencil transpose(const OperatorStencil& s, FieldGroup group, const GroupSpec& spec);

cplx apply_stencil(const OperatorStencil& s, const PointFunction& f, const Flow& flow,
                   std::span<const double> x);

struct StencilOptions {
  double h = 1e-3;
  int order = 2;
};

/// sum_terms c * stencil(word) f at x; throws UnsupportedOrderError for words
/// longer than kMaxWordLength.
cplx apply_operator(const EnvelopingElement& u, const PointFunction& f, const Flow& flow,
                    std::span<const double> x, const StencilOptions& opts);
cplx apply_operator_transpose(const EnvelopingElement& u, const PointFunction& f, FieldGroup group,
                              const GroupSpec& spec, std::span<const double> x,
                              const StencilOptions& opts);

/// First-order field D_k f(x) = d/dt f(exp(-t E_k) x) at t = 0.
cplx generator_field(int k, const PointFunction& f, FieldGroup group, const GroupSpec& spec,
                     std::span<const double> x, const StencilOptions& opts);

std::vector<cplx> apply_P(const EnvelopingElement& u, const TestFunction& f, FieldGroup group,
                          const GroupSpec& spec, const PointList& points,
                          const StencilOptions& opts = {});
std::vector<cplx> apply_Q(const EnvelopingElement& u, const TestFunction& f,
                          const PointList& points, const StencilOptions& opts = {});

/// Index of the M (resp. T) coordinate carrying base generator k.
std::vector<int> conv_generator_map(const ExtendedChart& chart);

/// [E_i, E_j] in the Lie algebra of N, S or M, with E_k the matrix unit at
/// entry k and the A generator r equal to diag(e_r - e_{m-1}).
EnvelopingElement lie_bracket(FieldGroup group, const GroupSpec& spec, int i, int j);

/// Base generators carried by the acting factor: the acting layers of N for
/// K1, the A generators for H.
std::vector<bool> acting_generators(const ExtendedChart& chart);

/// u rewritten with acting generators to the right, the form on which the
/// slot operators Q are defined.
EnvelopingElement slot_normal_form(const EnvelopingElement& u, const ExtendedChart& chart);

/// max over points of |P_u f~ - Q_u f~|: P moves the base point, Q moves the
/// M (resp. T) slots and acts on slot_normal_form(u). Scale is the largest
/// |Q_u f~|.
ResidualReport operator_identity_residual(const EnvelopingElement& u, const TestFunction& f,
                                          const ExtendedChart& chart, const PointList& points,
                                          const StencilOptions& p_opts,
                                          const StencilOptions& q_opts);

enum class SymbolMode {
  Exact,           // multiplier (-i lambda)^k
  GridConsistent,  // lambda replaced by 2 sin(lambda h / 2) / h, the multiplier of the compact central difference
};

/// Symbol evaluated at a dual-grid frequency under the chosen mode.
cplx symbol_at(const Polynomial& p, std::span<const double> lambda, const GridSpec& grid,
               SymbolMode mode);

/// E = F^-1[ conj(P) / (|P|^2 + eps^2) ]; throws ZeroOperatorError when the
/// symbol vanishes identically.
GridFunction fundamental_solution_abelian(const EnvelopingElement& u, const GridSpec& grid,
                                          double epsilon, SymbolMode mode = SymbolMode::GridConsistent);

struct FundamentalSolutionOptions {
  std::size_t points = 128;       // axes the symbol depends on
  std::size_t flat_points = 16;   // axes the symbol does not depend on
  double half_width = 8.0;
  double epsilon = 1e-8;
  SymbolMode mode = SymbolMode::GridConsistent;
  StencilOptions transpose{1e-3, 2};
  std::vector<double> test_sigmas{0.5, 0.7};
};

struct FundamentalSolutionReport {
  GridFunction solution;  // on the abelian picture (M for N, T for S)
  std::string picture;
  std::vector<double> test_sigmas;
  std::vector<double> weak_residuals;  // |<E, P_u^t phi> - phi(e)| per test function
};

/// Solves on M (resp. T) and pulls back along Gamma; weak residuals are
/// measured against Gaussians centred at the identity.
FundamentalSolutionReport fundamental_solution_group(const EnvelopingElement& u, BaseGroup group,
                                                     const GroupSpec& spec,
                                                     const FundamentalSolutionOptions& opts);

}  // namespace nilharm
