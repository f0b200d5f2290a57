#include "nilharm/test_functions.hpp"

#include <cmath>
#include <string>

#include "nilharm/errors.hpp"

namespace nilharm {

TestFunction::TestFunction(std::size_t dim, std::vector<GaussianTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exponents.size() != dim_ || t.center.size() != dim_ || t.widths.size() != dim_) {
      throw InvalidArgument("test function term has the wrong dimension");
    }
    for (double w : t.widths)
      if (!(w > 0.0)) throw InvalidArgument("Gaussian widths must be positive");
    for (int e : t.exponents)
      if (e < 0) throw InvalidArgument("monomial exponents must be non-negative");
  }
}

TestFunction TestFunction::gaussian(std::span<const double> center, std::span<const double> widths,
                                    cplx coefficient) {
  if (center.size() != widths.size()) throw InvalidArgument("center/width length mismatch");
  GaussianTerm t;
  t.coefficient = coefficient;
  t.exponents = FixedVector<int, kMaxCoords>(center.size(), 0);
  t.center = Coords(center);
  t.widths = Coords(widths);
  return TestFunction(center.size(), {t});
}

TestFunction TestFunction::gaussian(std::size_t dim, double width) {
  const Coords c(dim, 0.0), w(dim, width);
  return gaussian(c.span(), w.span());
}

cplx TestFunction::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw InvalidArgument("evaluate: expected a point of dimension " + std::to_string(dim_) +
                          ", got " + std::to_string(x.size()));
  }
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    double q = 0.0;
    double poly = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double d = x[i] - t.center[i];
      q += t.widths[i] * d * d;
      for (int e = 0; e < t.exponents[i]; ++e) poly *= d;
    }
    sum += t.coefficient * (poly * std::exp(-0.5 * q));
  }
  return sum;
}

TestFunction TestFunction::derivative(std::size_t k) const {
  if (k >= dim_) throw InvalidArgument("derivative: coordinate out of range");
  std::vector<GaussianTerm> out;
  out.reserve(2 * terms_.size());
  for (const auto& t : terms_) {
    if (t.exponents[k] > 0) {
      GaussianTerm a = t;
      a.coefficient *= static_cast<double>(t.exponents[k]);
      a.exponents[k] -= 1;
      out.push_back(a);
    }
    GaussianTerm b = t;
    b.coefficient *= -t.widths[k];
    b.exponents[k] += 1;
    out.push_back(b);
  }
  return TestFunction(dim_, std::move(out));
}

TestFunction TestFunction::translated(std::span<const double> shift) const {
  if (shift.size() != dim_) throw InvalidArgument("translated: dimension mismatch");
  TestFunction out = *this;
  for (auto& t : out.terms_)
    for (std::size_t i = 0; i < dim_; ++i) t.center[i] += shift[i];
  return out;
}

TestFunction TestFunction::times_monomial(std::size_t k, int power) const {
  if (k >= dim_ || power < 0) throw InvalidArgument("times_monomial: bad arguments");
  TestFunction out = *this;
  for (auto& t : out.terms_) t.exponents[k] += power;
  return out;
}

TestFunction TestFunction::scaled(cplx c) const {
  TestFunction out = *this;
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

TestFunction& TestFunction::operator+=(const TestFunction& other) {
  if (other.dim_ != dim_) throw InvalidArgument("cannot add test functions of different dimension");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

double gaussian_norm_sq(const TestFunction& f) {
  for (const auto& t : f.terms())
    for (int e : t.exponents)
      if (e != 0) throw InvalidArgument("gaussian_norm_sq: monomial factors are not supported");
  cplx sum = 0.0;
  for (const auto& a : f.terms())
    for (const auto& b : f.terms()) {
      double log_overlap = 0.0;
      double scale = 1.0;
      for (std::size_t i = 0; i < f.dim(); ++i) {
        const double ws = a.widths[i] + b.widths[i];
        const double d = a.center[i] - b.center[i];
        scale *= std::sqrt(2.0 * M_PI / ws);
        log_overlap -= 0.5 * a.widths[i] * b.widths[i] / ws * d * d;
      }
      sum += std::conj(a.coefficient) * b.coefficient * (scale * std::exp(log_overlap));
    }
  return sum.real();
}

}  // namespace nilharm
