#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hodgelab/io.hpp"
#include "hodgelab/qspace.hpp"

namespace hodgelab {

/// Blade e_S, S encoded as a bitmask over the orthogonal basis (bit i is e_{i+1}).
using Blade = std::uint32_t;

/// Cl(V, q) relative to an orthogonal basis with e_i^2 = q_i, so vw + wv = 2 psi(v, w).
class CliffordAlgebra {
 public:
  explicit CliffordAlgebra(std::vector<Rational> qvals);

  std::size_t n() const { return qvals_.size(); }
  const std::vector<Rational>& qvals() const { return qvals_; }
  std::size_t dim() const { return std::size_t{1} << n(); }
  std::size_t even_dim() const { return n() == 0 ? 1 : dim() / 2; }

  /// e_S e_T = coefficient * e_{S xor T}.
  Rational blade_coefficient(Blade s, Blade t) const;

  /// Even blades in increasing mask order.
  std::vector<Blade> even_blades() const;
  std::vector<Blade> all_blades() const;

 private:
  std::vector<Rational> qvals_;
};

/// Orthogonal basis columns P (P^T G P = diag(qvals)) together with the algebra.
struct CliffordBuild {
  CliffordAlgebra algebra;
  QMatrix P;
};

CliffordBuild clifford_build(const QuadraticSpace& space);

class CliffordElement {
 public:
  using Terms = std::map<Blade, QuadNumber>;

  CliffordElement() = default;
  static CliffordElement scalar(const QuadNumber& c);
  static CliffordElement blade(Blade s, const QuadNumber& c = 1);
  /// Grade-1 element sum_i v_i e_{i+1}.
  static CliffordElement vector(const ExactVector& v);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  QuadNumber coeff(Blade s) const;
  void add(Blade s, const QuadNumber& c);

  bool is_even() const;
  bool is_grade(unsigned k) const;

  CliffordElement& operator+=(const CliffordElement& o);
  CliffordElement& operator-=(const CliffordElement& o);
  CliffordElement& operator*=(const QuadNumber& s);
  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(const QuadNumber& s, CliffordElement a) { return a *= s; }
  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y,
                             const CliffordAlgebra& alg);

/// Square of e_1 ... e_n.
Rational omega_squared(const CliffordAlgebra& alg);

/// Center of Cl (commutes with every e_i) or of the even subalgebra (commutes with every e_i e_j).
std::vector<CliffordElement> center(const CliffordAlgebra& alg, bool even_only);

/// Matrix of x -> g x on the full algebra, columns in increasing blade order.
ExactMatrix left_multiplication(const CliffordElement& g, const CliffordAlgebra& alg);
/// Same, restricted to the even part; requires g even.
ExactMatrix left_multiplication_even(const CliffordElement& g, const CliffordAlgebra& alg);

/// Two-sided inverse, or DomainError when g is not invertible.
CliffordElement clifford_inverse(const CliffordElement& g, const CliffordAlgebra& alg);

/// Coordinates of g v g^{-1}; DomainError when the result leaves V.
ExactVector spin_conjugate(const CliffordElement& g, const ExactVector& v, const CliffordAlgebra& alg);

QuadNumber quadratic_value(const ExactVector& v, const CliffordAlgebra& alg);

/// Matrix of x -> v x v0 on the even part (even blades in increasing order).
ExactMatrix ks_embed(const ExactVector& v, const ExactVector& v0, const CliffordAlgebra& alg);

Json clifford_to_json(const CliffordElement& x, const CliffordAlgebra& alg);

}  // namespace hodgelab
