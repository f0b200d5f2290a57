#include "nilharm/operator_parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t dim) : s_(text), dim_(dim) {}

  EnvelopingElement parse() {
    skip();
    if (pos_ == s_.size()) throw SyntaxError("empty operator expression", pos_);
    EnvelopingElement e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  EnvelopingElement expr() {
    EnvelopingElement e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  EnvelopingElement term() {
    EnvelopingElement e = factor();
    while (accept('*')) e = e * factor();
    return e;
  }

  EnvelopingElement factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return primary();
  }

  EnvelopingElement primary() {
    skip();
    if (pos_ == s_.size()) throw SyntaxError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      EnvelopingElement e = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (c == 'E') return generator();
    if (c == 'i') {
      ++pos_;
      return EnvelopingElement::scalar(dim_, cplx(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  EnvelopingElement generator() {
    const std::size_t start = pos_++;
    std::size_t end = pos_;
    while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    if (end == pos_) throw SyntaxError("expected a generator index after 'E'", pos_);
    unsigned long k = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + end, k);
    if (ec != std::errc() || k == 0) throw SyntaxError("generator indices start at 1", pos_);
    pos_ = end;
    if (k > dim_) {
      throw InvalidArgument("generator E" + std::to_string(k) + " at position " +
                            std::to_string(start) + " is out of range for dimension " +
                            std::to_string(dim_));
    }
    return EnvelopingElement::generator(dim_, static_cast<int>(k - 1));
  }

  EnvelopingElement number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    };
    digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      digits();
    }
    if (end < s_.size() && s_[end] == 'e' && end + 1 < s_.size() &&
        (std::isdigit(static_cast<unsigned char>(s_[end + 1])) ||
         ((s_[end + 1] == '+' || s_[end + 1] == '-') && end + 2 < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[end + 2]))))) {
      end += 2;
      digits();
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + end, v);
    if (ec != std::errc() || ptr != s_.data() + end) throw SyntaxError("malformed number", start);
    pos_ = end;
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return EnvelopingElement::scalar(dim_, cplx(0.0, v));
    }
    return EnvelopingElement::scalar(dim_, cplx(v, 0.0));
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

EnvelopingElement parse_operator(std::string_view expr, std::size_t dim) {
  return Parser(expr, dim).parse();
}

}  // namespace nilharm
