#include "hodgelab/scalar.hpp"

#include <cctype>
#include <sstream>

namespace hodgelab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw DomainError("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digits_after : digits_before) = true;
    } else {
      throw DomainError("malformed rational literal '" + s + "'");
    }
  }
  if (!digits_before || (seen_slash && !digits_after)) {
    throw DomainError("malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
  if (sgn(r.get_den()) == 0) throw DomainError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

bool is_squarefree(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) return false;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw DomainError("squarefree part of 0 is undefined");
  Integer m = abs(n);
  Integer result = 1;
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  result *= m;
  return sgn(n) < 0 ? Integer(-result) : result;
}

FieldSpec FieldSpec::quadratic(std::int64_t d) {
  if (d == 0) return FieldSpec{};
  if (d == 1) throw DomainError("Q(sqrt 1) is not a field extension; use d = 0 for Q");
  if (!is_squarefree(Integer(static_cast<long>(d)))) {
    throw DomainError("field parameter d = " + std::to_string(d) + " is not squarefree");
  }
  return FieldSpec{d};
}

std::string to_string(const FieldSpec& f) {
  if (f.d == 0) return "Q";
  return "Q(sqrt(" + std::to_string(f.d) + "))";
}

QuadNumber::QuadNumber(Rational a, Rational b, FieldSpec field)
    : a_(std::move(a)), b_(std::move(b)), d_(field.d) {
  if (d_ == 0 && !hodgelab::is_zero(b_)) {
    throw DomainError("nonzero sqrt coefficient for an element of Q");
  }
}

std::int64_t QuadNumber::join(const QuadNumber& o) const {
  if (d_ == o.d_ || o.d_ == 0) return d_;
  if (d_ == 0) return o.d_;
  throw FieldMismatch("cannot combine elements of " + to_string(field()) + " and " +
                      to_string(o.field()));
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  d_ = join(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  d_ = join(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  d_ = join(o);
  Rational a = a_ * o.a_ + Rational(static_cast<long>(d_)) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Rational QuadNumber::trace() const {
  if (d_ == 0) return a_;
  return 2 * a_;
}

Rational QuadNumber::norm() const {
  if (d_ == 0) return a_;
  return a_ * a_ - Rational(static_cast<long>(d_)) * b_ * b_;
}

QuadNumber QuadNumber::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (d_ == 0) return QuadNumber(Rational(1) / a_);
  Rational n = a_ * a_ - Rational(static_cast<long>(d_)) * b_ * b_;
  return {a_ / n, -b_ / n, field()};
}

std::string to_string(const QuadNumber& x) {
  if (x.is_rational()) return to_string(x.a());
  std::ostringstream os;
  os << to_string(x.a()) << (sgn(x.b()) < 0 ? " - " : " + ") << to_string(abs(x.b())) << "*sqrt("
     << x.field().d << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadNumber& x) { return os << to_string(x); }

QuadNumber field_mul(const QuadNumber& x, const QuadNumber& y, FieldSpec spec) {
  auto inside = [&](const QuadNumber& z) { return z.field() == spec || z.field().is_rational(); };
  if (!inside(x) || !inside(y)) {
    throw FieldMismatch("operands of field_mul are not elements of " + to_string(spec));
  }
  QuadNumber r = x * y;
  if (!spec.is_rational()) r = QuadNumber(r.a(), r.b(), spec);
  return r;
}

std::pair<Rational, Rational> field_trace_norm(const QuadNumber& x, FieldSpec spec) {
  if (spec.is_rational()) {
    if (!x.is_rational()) throw FieldMismatch("irrational element passed with field Q");
    return {x.a(), x.a()};
  }
  if (!(x.field() == spec || x.field().is_rational())) {
    throw FieldMismatch("element is not in " + to_string(spec));
  }
  QuadNumber y(x.a(), x.b(), spec);
  return {y.trace(), y.norm()};
}

}  // namespace hodgelab
