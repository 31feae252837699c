#include <algorithm>
#include <cctype>
#include <limits>

#include "hodgelab/cli.hpp"

namespace hodgelab {

SyntaxError::SyntaxError(const std::string& what, std::size_t line, std::size_t column)
    : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  CarrierExpr parse() {
    CarrierExpr c = carrier();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return c;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError(what, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size()) fail(std::string("expected '") + ch + "' but input ended");
    if (text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::size_t integer() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(pos_ >= text_.size() ? "expected an integer but input ended" : "expected an integer");
    }
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::size_t>::max() - digit) / 10) fail("integer overflow");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  CarrierExpr carrier() {
    skip_space();
    const std::size_t start = pos_;
    const std::string name = word();
    if (name == "std") return CarrierExpr::std_rep();
    if (name == "dual") return CarrierExpr::dual();
    if (name == "sum" || name == "prod") {
      expect('(');
      std::vector<CarrierExpr> parts{carrier()};
      while (accept(',')) parts.push_back(carrier());
      expect(')');
      return name == "sum" ? CarrierExpr::sum(std::move(parts)) : CarrierExpr::prod(std::move(parts));
    }
    if (name == "pow") {
      expect('(');
      CarrierExpr c = carrier();
      expect(',');
      const std::size_t k = integer();
      expect(')');
      return CarrierExpr::pow(std::move(c), k);
    }
    if (name == "wedge" || name == "tensor") {
      expect('(');
      const std::size_t k = integer();
      expect(',');
      CarrierExpr c = carrier();
      expect(')');
      return name == "wedge" ? CarrierExpr::wedge(k, std::move(c)) : CarrierExpr::tensor(k, std::move(c));
    }
    pos_ = start;
    if (pos_ >= text_.size()) fail("expected a carrier but input ended");
    fail(name.empty() ? "expected a carrier" : "unknown carrier '" + name + "'");
  }
};

// Saturates at cap + 1 so nested powers cannot overflow.
std::size_t capped_degree(const CarrierExpr& c, std::size_t cap) {
  using K = CarrierExpr::Kind;
  switch (c.kind) {
    case K::Std:
    case K::Dual:
      return 1;
    case K::Sum:
    case K::Prod: {
      std::size_t m = 0;
      for (const auto& part : c.children) {
        const std::size_t d = capped_degree(part, cap);
        m = c.kind == K::Sum ? std::max(m, d) : std::min(cap + 1, m + d);
      }
      return m;
    }
    case K::Pow:
      return capped_degree(c.children[0], cap);
    case K::Wedge:
    case K::Tensor: {
      const std::size_t d = capped_degree(c.children[0], cap);
      if (c.k == 0 || d == 0) return 0;
      return c.k > (cap + 1) / d ? cap + 1 : std::min(cap + 1, c.k * d);
    }
  }
  return 0;
}

}  // namespace

CarrierExpr parse_carrier(const std::string& text, std::size_t max_degree) {
  CarrierExpr c = Parser(text).parse();
  const std::size_t degree = capped_degree(c, max_degree);
  if (degree > max_degree) {
    throw DomainError("carrier degree exceeds the cap " + std::to_string(max_degree));
  }
  return c;
}

}  // namespace hodgelab
