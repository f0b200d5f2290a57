#pragma once

// The multiplicative group of negative reals with x . y = -(x y), and its
// isomorphisms onto (R+, *), (R^2, +) and (C, +) through the product
// group R+ x R-.

#include <complex>
#include <utility>

namespace nilharm {

class NegReal {
 public:
  /// Throws DomainError unless value < 0.
  explicit NegReal(double value);
  static NegReal identity() { return NegReal(-1.0); }

  double value() const { return value_; }
  friend bool operator==(NegReal a, NegReal b) { return a.value_ == b.value_; }

 private:
  double value_;
};

NegReal neg_mul(NegReal x, NegReal y);
NegReal neg_inv(NegReal x);

/// psi(x) = -x.
double iso_psi(NegReal x);
NegReal iso_psi_inverse(double p);

/// Psi(x, y) = (ln x, ln|y|) on R+ x R-.
std::pair<double, double> iso_Psi(double x, NegReal y);
std::pair<double, NegReal> iso_Psi_inverse(double a, double b);

/// Phi(x, y) = ln x + i ln|y|.
std::complex<double> iso_Phi(double x, NegReal y);
std::pair<double, NegReal> iso_Phi_inverse(std::complex<double> z);

/// Componentwise law of R+ x R-.
std::pair<double, NegReal> product_mul(std::pair<double, NegReal> p, std::pair<double, NegReal> q);

}  // namespace nilharm
