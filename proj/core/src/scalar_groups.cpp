#include "nilharm/scalar_groups.hpp"

#include <cmath>
#include <string>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("expected a finite positive real, got " + std::to_string(x));
  }
}

}  // namespace

NegReal::NegReal(double value) : value_(value) {
  if (!(value < 0.0) || !std::isfinite(value)) {
    throw DomainError("expected a finite negative real, got " + std::to_string(value));
  }
}

NegReal neg_mul(NegReal x, NegReal y) { return NegReal(-(x.value() * y.value())); }

NegReal neg_inv(NegReal x) { return NegReal(1.0 / x.value()); }

double iso_psi(NegReal x) { return -x.value(); }

NegReal iso_psi_inverse(double p) {
  require_positive(p);
  return NegReal(-p);
}

std::pair<double, double> iso_Psi(double x, NegReal y) {
  require_positive(x);
  return {std::log(x), std::log(-y.value())};
}

std::pair<double, NegReal> iso_Psi_inverse(double a, double b) {
  return {std::exp(a), NegReal(-std::exp(b))};
}

std::complex<double> iso_Phi(double x, NegReal y) {
  const auto [a, b] = iso_Psi(x, y);
  return {a, b};
}

std::pair<double, NegReal> iso_Phi_inverse(std::complex<double> z) {
  return iso_Psi_inverse(z.real(), z.imag());
}

std::pair<double, NegReal> product_mul(std::pair<double, NegReal> p, std::pair<double, NegReal> q) {
  require_positive(p.first);
  require_positive(q.first);
  return {p.first * q.first, neg_mul(p.second, q.second)};
}

}  // namespace nilharm
