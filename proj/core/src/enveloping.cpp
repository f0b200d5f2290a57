#include "nilharm/enveloping.hpp"

#include <algorithm>
#include <sstream>

#include "nilharm/errors.hpp"

namespace nilharm {

EnvelopingElement::EnvelopingElement(std::size_t dim, std::vector<EnvelopingTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    for (int k : t.word)
      if (k < 0 || static_cast<std::size_t>(k) >= dim_) {
        throw InvalidArgument("generator index E" + std::to_string(k + 1) +
                              " out of range for a group of dimension " + std::to_string(dim_));
      }
  normalize();
}

EnvelopingElement EnvelopingElement::scalar(std::size_t dim, cplx c) {
  return EnvelopingElement(dim, {{c, {}}});
}

EnvelopingElement EnvelopingElement::generator(std::size_t dim, int k) {
  return EnvelopingElement(dim, {{1.0, {k}}});
}

EnvelopingElement EnvelopingElement::sum_of_squares(std::size_t dim, std::span<const int> gens) {
  std::vector<EnvelopingTerm> terms;
  for (int k : gens) terms.push_back({1.0, {k, k}});
  return EnvelopingElement(dim, std::move(terms));
}

std::size_t EnvelopingElement::max_word_length() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n = std::max(n, t.word.size());
  return n;
}

// Like words merge (first occurrence keeps its position); exact zeros drop.
void EnvelopingElement::normalize() {
  std::vector<EnvelopingTerm> out;
  for (const auto& t : terms_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.word == t.word; });
    if (it == out.end())
      out.push_back(t);
    else
      it->coefficient += t.coefficient;
  }
  std::erase_if(out, [](const auto& t) { return t.coefficient == cplx{}; });
  terms_ = std::move(out);
}

EnvelopingElement& EnvelopingElement::operator+=(const EnvelopingElement& o) {
  if (o.dim_ != dim_) throw InvalidArgument("enveloping elements of different dimension");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

EnvelopingElement& EnvelopingElement::operator-=(const EnvelopingElement& o) { return *this += -o; }

EnvelopingElement EnvelopingElement::operator-() const {
  EnvelopingElement out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

EnvelopingElement operator*(const EnvelopingElement& a, const EnvelopingElement& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("enveloping elements of different dimension");
  std::vector<EnvelopingTerm> terms;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      terms.push_back({x.coefficient * y.coefficient, std::move(w)});
    }
  return EnvelopingElement(a.dim_, std::move(terms));
}

EnvelopingElement operator*(cplx c, const EnvelopingElement& a) {
  return EnvelopingElement::scalar(a.dim_, c) * a;
}

EnvelopingElement EnvelopingElement::relabeled(std::span<const int> map, std::size_t new_dim) const {
  if (map.size() != dim_) throw InvalidArgument("relabeling map has the wrong length");
  std::vector<EnvelopingTerm> terms = terms_;
  for (auto& t : terms)
    for (int& k : t.word) k = map[static_cast<std::size_t>(k)];
  return EnvelopingElement(new_dim, std::move(terms));
}

std::string EnvelopingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool unit = t.coefficient == cplx(1.0, 0.0);
    if (!unit || t.word.empty()) {
      if (t.coefficient.imag() == 0.0)
        os << t.coefficient.real();
      else
        os << '(' << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
           << t.coefficient.imag() << "i)";
      if (!t.word.empty()) os << '*';
    }
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      if (i) os << '*';
      os << 'E' << t.word[i] + 1;
    }
  }
  return os.str();
}

void Polynomial::add(const std::vector<int>& exponents, cplx c) {
  if (exponents.size() != dim_) throw InvalidArgument("polynomial exponent length mismatch");
  auto& slot = coeffs_[exponents];
  slot += c;
  if (slot == cplx{}) coeffs_.erase(exponents);
}

cplx Polynomial::coefficient(const std::vector<int>& exponents) const {
  const auto it = coeffs_.find(exponents);
  return it == coeffs_.end() ? cplx{} : it->second;
}

bool Polynomial::depends_on(std::size_t k) const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [k](const auto& kv) { return kv.first[k] > 0; });
}

cplx Polynomial::evaluate(std::span<const double> lambda) const {
  if (lambda.size() != dim_) throw InvalidArgument("polynomial evaluated at a point of wrong dimension");
  cplx sum = 0.0;
  for (const auto& [e, c] : coeffs_) {
    double m = 1.0;
    for (std::size_t k = 0; k < dim_; ++k)
      for (int p = 0; p < e[k]; ++p) m *= lambda[k];
    sum += c * m;
  }
  return sum;
}

Polynomial symbol(const EnvelopingElement& u) {
  Polynomial p(u.dim());
  for (const auto& t : u.terms()) {
    std::vector<int> e(u.dim(), 0);
    cplx c = t.coefficient;
    for (int k : t.word) {
      e[static_cast<std::size_t>(k)] += 1;
      c *= cplx(0.0, -1.0);
    }
    p.add(e, c);
  }
  return p;
}

EnvelopingElement normal_ordered(const EnvelopingElement& u, const std::vector<bool>& trailing,
                                 const Bracket& bracket) {
  if (trailing.size() != u.dim()) throw InvalidArgument("normal_ordered: class vector has the wrong size");
  EnvelopingElement out(u.dim());
  std::vector<EnvelopingTerm> pending(u.terms().begin(), u.terms().end());
  while (!pending.empty()) {
    EnvelopingTerm t = std::move(pending.back());
    pending.pop_back();
    std::size_t pos = 0;
    while (pos + 1 < t.word.size() &&
           !(trailing[static_cast<std::size_t>(t.word[pos])] &&
             !trailing[static_cast<std::size_t>(t.word[pos + 1])]))
      ++pos;
    if (pos + 1 >= t.word.size()) {
      out += EnvelopingElement(u.dim(), {t});
      continue;
    }
    const int a = t.word[pos], b = t.word[pos + 1];
    EnvelopingTerm swapped = t;
    std::swap(swapped.word[pos], swapped.word[pos + 1]);
    pending.push_back(std::move(swapped));
    const EnvelopingElement br = bracket(a, b);
    if (br.dim() != u.dim()) throw InvalidArgument("normal_ordered: bracket has the wrong dimension");
    for (const auto& bt : br.terms()) {
      EnvelopingTerm n;
      n.coefficient = t.coefficient * bt.coefficient;
      n.word.assign(t.word.begin(), t.word.begin() + static_cast<long>(pos));
      n.word.insert(n.word.end(), bt.word.begin(), bt.word.end());
      n.word.insert(n.word.end(), t.word.begin() + static_cast<long>(pos) + 2, t.word.end());
      pending.push_back(std::move(n));
    }
  }
  return out;
}

}  // namespace nilharm
