#pragma once

// Uniform tensor grids, sampled functions on them, and the Riemann
// quadrature used as the Haar integral throughout.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nilharm/lie_groups.hpp"
#include "nilharm/test_functions.hpp"

namespace nilharm {

struct GridAxis {
  double center = 0.0;
  double half_width = 1.0;
  std::size_t points = 2;

  GridAxis() = default;
  GridAxis(double c, double L, std::size_t P);

  double step() const { return 2.0 * half_width / static_cast<double>(points); }
  double node(std::size_t k) const {
    return center - half_width + static_cast<double>(k) * step();
  }
  double dual_step() const;
  /// lambda_j = (j - P/2) * dual_step.
  double frequency(std::size_t j) const;

  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

using GridSpec = std::vector<GridAxis>;

GridSpec uniform_grid(std::size_t dim, std::size_t points, double half_width, double center = 0.0);
std::size_t grid_size(const GridSpec& spec);
/// Row-major (last axis fastest) node coordinates of flat index `flat`.
void grid_node(const GridSpec& spec, std::size_t flat, std::span<double> out);
void grid_frequency(const GridSpec& spec, std::size_t flat, std::span<double> out);
double cell_volume(const GridSpec& spec);
double dual_cell_volume(const GridSpec& spec);  // prod dlambda / (2 pi)

enum class Domain : std::uint8_t { Space = 0, Frequency = 1 };

struct GridFunction {
  GridSpec spec;
  Domain domain = Domain::Space;
  std::vector<cplx> samples;

  GridFunction() = default;
  GridFunction(GridSpec s, Domain d = Domain::Space);

  std::size_t dim() const { return spec.size(); }
  std::size_t size() const { return samples.size(); }
};

using PointFunction = std::function<cplx(std::span<const double>)>;

GridFunction sample(const TestFunction& f, const GridSpec& spec);
GridFunction sample(const PointFunction& f, const GridSpec& spec);

/// Riemann sum of f over the grid nodes times the cell volume, reduced in a
/// fixed order.
cplx quadrature(const PointFunction& f, const GridSpec& spec);
/// Same sum for already sampled data.
cplx quadrature(const GridFunction& g);

void write_csv(const GridFunction& g, std::ostream& out);
void write_binary(const GridFunction& g, std::ostream& out);
GridFunction read_binary(std::istream& in);
void save_csv(const GridFunction& g, const std::string& path);
void save_binary(const GridFunction& g, const std::string& path);
GridFunction load_binary(const std::string& path);

}  // namespace nilharm
