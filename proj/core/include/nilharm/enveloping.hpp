#pragma once

// Elements of the complexified enveloping algebra as ordered words in the
// generators E_0 .. E_{dim-1}, and their Fourier symbols.

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nilharm {

using cplx = std::complex<double>;
using Word = std::vector<int>;

struct EnvelopingTerm {
  cplx coefficient;
  Word word;  // applied right to left: E_{w0} (E_{w1} (... f))
};

class EnvelopingElement {
 public:
  explicit EnvelopingElement(std::size_t dim = 0) : dim_(dim) {}
  EnvelopingElement(std::size_t dim, std::vector<EnvelopingTerm> terms);

  static EnvelopingElement scalar(std::size_t dim, cplx c);
  static EnvelopingElement generator(std::size_t dim, int k);
  /// Sum of E_k E_k over the listed generators.
  static EnvelopingElement sum_of_squares(std::size_t dim, std::span<const int> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<EnvelopingTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t max_word_length() const;

  EnvelopingElement& operator+=(const EnvelopingElement& o);
  EnvelopingElement& operator-=(const EnvelopingElement& o);
  EnvelopingElement operator-() const;
  friend EnvelopingElement operator+(EnvelopingElement a, const EnvelopingElement& b) { return a += b; }
  friend EnvelopingElement operator-(EnvelopingElement a, const EnvelopingElement& b) { return a -= b; }
  /// Noncommutative product: words concatenate in written order.
  friend EnvelopingElement operator*(const EnvelopingElement& a, const EnvelopingElement& b);
  friend EnvelopingElement operator*(cplx c, const EnvelopingElement& a);

  /// Renames generator k to map[k] in every word, targeting a new dimension.
  EnvelopingElement relabeled(std::span<const int> map, std::size_t new_dim) const;

  std::string to_string() const;

 private:
  void normalize();

  std::size_t dim_;
  std::vector<EnvelopingTerm> terms_;
};

/// Lie bracket [E_i, E_j] as a linear combination of generators.
using Bracket = std::function<EnvelopingElement(int, int)>;

/// Rewrites u so that no generator with trailing[k] set stands to the left
/// of one without it, using E_a E_b = E_b E_a + [E_a, E_b]. The result is the
/// same element of the enveloping algebra.
EnvelopingElement normal_ordered(const EnvelopingElement& u, const std::vector<bool>& trailing,
                                 const Bracket& bracket);

/// Polynomial in lambda with complex coefficients keyed by exponent vectors.
class Polynomial {
 public:
  explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::map<std::vector<int>, cplx>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  void add(const std::vector<int>& exponents, cplx c);
  cplx coefficient(const std::vector<int>& exponents) const;
  /// Exponent of lambda_k appearing anywhere.
  bool depends_on(std::size_t k) const;

  cplx evaluate(std::span<const double> lambda) const;

 private:
  std::size_t dim_;
  std::map<std::vector<int>, cplx> coeffs_;
};

/// Multiplier of the constant-coefficient operator where each generator acts
/// as -d/dx_k: every letter contributes a factor (-i lambda_k).
Polynomial symbol(const EnvelopingElement& u);

}  // namespace nilharm
