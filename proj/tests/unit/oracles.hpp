#pragma once

// Reference computations that avoid the library code paths under test.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nilharm/lie_groups.hpp"

namespace oracle {

using Matrix = std::vector<double>;  // row-major m x m

inline Matrix multiply(const Matrix& a, const Matrix& b, int m) {
  Matrix c(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) c[i * m + j] += a[i * m + k] * b[k * m + j];
  return c;
}

inline Matrix diagonal(const std::vector<double>& d) {
  const int m = static_cast<int>(d.size());
  Matrix a(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i) a[i * m + i] = d[i];
  return a;
}

/// Inverse of a unit upper-triangular matrix by back substitution.
inline Matrix unit_upper_inverse(const Matrix& a, int m) {
  Matrix x(static_cast<std::size_t>(m * m), 0.0);
  for (int col = 0; col < m; ++col) {
    for (int i = m - 1; i >= 0; --i) {
      double s = i == col ? 1.0 : 0.0;
      for (int k = i + 1; k < m; ++k) s -= a[i * m + k] * x[k * m + col];
      x[i * m + col] = s;
    }
  }
  return x;
}

/// Unit upper-triangular matrix from strict-upper entries listed superdiagonal
/// by superdiagonal.
inline Matrix from_graded(const std::vector<double>& v, int m) {
  Matrix a(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i) a[i * m + i] = 1.0;
  std::size_t k = 0;
  for (int d = 1; d < m; ++d)
    for (int i = 0; i + d < m; ++i) a[i * m + i + d] = v[k++];
  return a;
}

inline std::vector<double> to_graded(const Matrix& a, int m) {
  std::vector<double> v;
  for (int d = 1; d < m; ++d)
    for (int i = 0; i + d < m; ++i) v.push_back(a[i * m + i + d]);
  return v;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// int exp(-a (x - y)^2 / 2) exp(-b y^2 / 2) dy.
inline double gaussian_convolution_1d(double a, double b, double x) {
  return std::sqrt(2.0 * M_PI / (a + b)) * std::exp(-0.5 * a * b / (a + b) * x * x);
}

/// Direct O(P^2) transform with the library's kernel and node conventions.
inline std::vector<std::complex<double>> direct_dft(const std::vector<std::complex<double>>& f, double c,
                                                    double L) {
  const std::size_t P = f.size();
  const double h = 2.0 * L / static_cast<double>(P);
  const double dl = 2.0 * M_PI / (static_cast<double>(P) * h);
  std::vector<std::complex<double>> F(P);
  for (std::size_t j = 0; j < P; ++j) {
    const double lambda = (static_cast<double>(j) - static_cast<double>(P) / 2.0) * dl;
    for (std::size_t k = 0; k < P; ++k) {
      const double x = c - L + static_cast<double>(k) * h;
      F[j] += f[k] * std::polar(1.0, -lambda * x) * h;
    }
  }
  return F;
}

}  // namespace oracle
