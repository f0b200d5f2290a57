#pragma once

// Finite-dimensional stand-in for the correspondence of left ideals of
// L1(N) and L1(M) under Gamma: membership of psi * g in a dictionary span,
// measured by least squares on both sides.

#include <vector>

#include "nilharm/extension.hpp"
#include "nilharm/grid.hpp"
#include "nilharm/harmonic.hpp"

namespace nilharm {

struct IdealModel {
  GroupSpec spec{3};
  std::vector<TestFunction> generators;
  std::vector<PointFunction> dictionary;  // functions on N coordinates
  GridSpec grid;   // L2 sampling box, shared by N and M
  GridSpec inner;  // quadrature box for the convolutions (around the identity)
};

/// Gaussian translates of width `sigma` on the lattice spacing * Z^d,
/// ordered by distance from the origin so smaller dictionaries are prefixes.
std::vector<TestFunction> gaussian_lattice(const GroupSpec& spec, std::size_t count, double sigma,
                                           double spacing);

/// Generators first, then the lattice, then (optionally) every generator
/// convolved with each probe on N.
IdealModel make_ideal_model(const GroupSpec& spec, std::vector<TestFunction> generators,
                            const std::vector<TestFunction>& lattice,
                            const std::vector<TestFunction>& probes, GridSpec grid, GridSpec inner);

/// (psi *_c g~|_M) carried to N coordinates: the M-side convolution is
/// evaluated at Gamma^-1 of the point, with the twisted translate
/// g~|_M(v - rho(u)^-1 w, u - y).
cplx gamma_convolution_at(const TestFunction& psi, const PointFunction& g_m, const GroupSpec& spec,
                          std::span<const double> m_coords, const GridSpec& inner);

/// max over points of |Gamma(psi *_c phi~|_M)(X) - (psi * phi)(X)|. The M
/// side integrates on the inner box shifted by half a step along every axis.
ResidualReport gamma_intertwine_residual(const TestFunction& psi, const TestFunction& phi,
                                         const GroupSpec& spec, const PointList& points,
                                         const GridSpec& inner);

enum class IdealSide { N, M };

struct ClosureResult {
  double relative_residual = 0.0;
  bool rank_deficient = false;
};

/// Largest relative least-squares distance of psi * g (over the generators g)
/// from the dictionary span on the given side.
ClosureResult closure_residual(const IdealModel& model, const TestFunction& psi, IdealSide side);

struct CorrespondenceEntry {
  double n_residual = 0.0;
  double m_residual = 0.0;
  double difference = 0.0;
};

std::vector<CorrespondenceEntry> correspondence_check(const IdealModel& model,
                                                      const std::vector<TestFunction>& probes);

/// max |<d_k, d_l>_N - <Gamma^-1 d_k, Gamma^-1 d_l>_M| / max |<d_k, d_l>_N|.
double gamma_inner_product_error(const IdealModel& model);

}  // namespace nilharm
