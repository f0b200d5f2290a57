#pragma once

// Polynomial-times-Gaussian functions on R^d, evaluated in closed form.

#include <complex>
#include <span>
#include <vector>

#include "nilharm/fixed_vector.hpp"
#include "nilharm/lie_groups.hpp"

namespace nilharm {

using cplx = std::complex<double>;

struct GaussianTerm {
  cplx coefficient{1.0, 0.0};
  FixedVector<int, kMaxCoords> exponents;
  Coords center;
  Coords widths;  // inverse variances w_i in exp(-0.5 * w_i * (x_i - mu_i)^2)
};

class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(std::size_t dim) : dim_(dim) {}
  TestFunction(std::size_t dim, std::vector<GaussianTerm> terms);

  /// c * exp(-0.5 * sum w_i (x_i - mu_i)^2).
  static TestFunction gaussian(std::span<const double> center, std::span<const double> widths,
                               cplx coefficient = 1.0);
  /// Isotropic unit-width Gaussian centred at the origin.
  static TestFunction gaussian(std::size_t dim, double width = 1.0);
  static TestFunction zero(std::size_t dim) { return TestFunction(dim); }

  std::size_t dim() const { return dim_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx evaluate(std::span<const double> x) const;
  cplx operator()(std::span<const double> x) const { return evaluate(x); }

  /// Exact partial derivative along coordinate k.
  TestFunction derivative(std::size_t k) const;
  /// x -> f(x - shift).
  TestFunction translated(std::span<const double> shift) const;
  /// Multiplies every term by (x_k - mu_k)^power, i.e. a polynomial factor.
  TestFunction times_monomial(std::size_t k, int power) const;
  TestFunction scaled(cplx c) const;

  TestFunction& operator+=(const TestFunction& other);
  friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }

 private:
  std::size_t dim_ = 0;
  std::vector<GaussianTerm> terms_;
};

/// Closed-form integral of |f|^2 over R^d; throws InvalidArgument when a
/// term carries a monomial factor.
double gaussian_norm_sq(const TestFunction& f);

}  // namespace nilharm
