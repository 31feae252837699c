#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hodgelab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different quadratic fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// A form or configuration that must be nondegenerate is not.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Two pieces of structure (a form and a field action, say) fail to be compatible.
class IncompatibleError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// Parses "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

bool is_squarefree(const Integer& n);

/// Signed squarefree kernel: the unique squarefree s with n = s * m^2.
Integer squarefree_part(const Integer& n);

/// Q when d == 0, otherwise Q(sqrt d) for squarefree d != 1.
struct FieldSpec {
  std::int64_t d = 0;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec quadratic(std::int64_t d);

  bool is_rational() const { return d == 0; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

std::string to_string(const FieldSpec& f);

/// a + b*sqrt(d). Elements tagged with d = 0 are rationals and combine with any field.
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(Rational a, Rational b, FieldSpec field);

  static QuadNumber sqrt_d(FieldSpec field) { return {Rational(0), Rational(1), field}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  FieldSpec field() const { return FieldSpec{d_}; }

  bool is_zero() const { return hodgelab::is_zero(a_) && hodgelab::is_zero(b_); }
  bool is_rational() const { return hodgelab::is_zero(b_); }

  QuadNumber conj() const { return {a_, -b_, field()}; }
  Rational trace() const;
  Rational norm() const;
  QuadNumber inverse() const;

  QuadNumber operator-() const { return {-a_, -b_, field()}; }
  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o) { return *this *= o.inverse(); }

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }

  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadNumber& x, const QuadNumber& y) { return !(x == y); }

 private:
  std::int64_t join(const QuadNumber& o) const;

  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 0;
};

inline bool is_zero(const QuadNumber& x) { return x.is_zero(); }

std::string to_string(const QuadNumber& x);
std::ostream& operator<<(std::ostream& os, const QuadNumber& x);

/// Product with an explicit field; both operands must lie in `spec` (or in Q).
QuadNumber field_mul(const QuadNumber& x, const QuadNumber& y, FieldSpec spec);

/// (trace, norm) of x over Q. For spec = Q returns (x, x).
std::pair<Rational, Rational> field_trace_norm(const QuadNumber& x, FieldSpec spec);

}  // namespace hodgelab
