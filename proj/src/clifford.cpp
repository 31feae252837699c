#include "hodgelab/clifford.hpp"

#include <bit>

namespace hodgelab {

namespace {

constexpr std::size_t kMaxGenerators = 20;

int popcount(Blade b) { return std::popcount(b); }

}  // namespace

CliffordAlgebra::CliffordAlgebra(std::vector<Rational> qvals) : qvals_(std::move(qvals)) {
  if (qvals_.size() > kMaxGenerators) throw DomainError("Clifford algebra: too many generators");
  for (const auto& q : qvals_)
    if (is_zero(q)) throw DegenerateError("Clifford algebra: zero diagonal value");
}

Rational CliffordAlgebra::blade_coefficient(Blade s, Blade t) const {
  // Each pair (i in S, j in T) with i > j costs one transposition.
  int swaps = 0;
  for (Blade rest = t; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += popcount(s >> (j + 1));
  }
  Rational c = (swaps % 2 == 0) ? 1 : -1;
  for (Blade common = s & t; common != 0; common &= common - 1) {
    c *= qvals_[static_cast<std::size_t>(std::countr_zero(common))];
  }
  return c;
}

std::vector<Blade> CliffordAlgebra::even_blades() const {
  std::vector<Blade> out;
  for (Blade s = 0; s < dim(); ++s)
    if (popcount(s) % 2 == 0) out.push_back(s);
  return out;
}

std::vector<Blade> CliffordAlgebra::all_blades() const {
  std::vector<Blade> out;
  for (Blade s = 0; s < dim(); ++s) out.push_back(s);
  return out;
}

CliffordBuild clifford_build(const QuadraticSpace& space) {
  auto [p, d] = congruent_diagonalize(space.gram());
  std::vector<Rational> q;
  for (std::size_t i = 0; i < d.rows(); ++i) q.push_back(d(i, i));
  return {CliffordAlgebra(std::move(q)), std::move(p)};
}

CliffordElement CliffordElement::scalar(const QuadNumber& c) { return blade(0, c); }

CliffordElement CliffordElement::blade(Blade s, const QuadNumber& c) {
  CliffordElement x;
  x.add(s, c);
  return x;
}

CliffordElement CliffordElement::vector(const ExactVector& v) {
  CliffordElement x;
  for (std::size_t i = 0; i < v.size(); ++i) x.add(Blade{1} << i, v[i]);
  return x;
}

QuadNumber CliffordElement::coeff(Blade s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? QuadNumber(0) : it->second;
}

void CliffordElement::add(Blade s, const QuadNumber& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool CliffordElement::is_even() const {
  for (const auto& [s, c] : terms_)
    if (popcount(s) % 2 != 0) return false;
  return true;
}

bool CliffordElement::is_grade(unsigned k) const {
  for (const auto& [s, c] : terms_)
    if (static_cast<unsigned>(popcount(s)) != k) return false;
  return true;
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

CliffordElement& CliffordElement::operator*=(const QuadNumber& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, c] : terms_) c *= s;
  return *this;
}

CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y,
                             const CliffordAlgebra& alg) {
  CliffordElement out;
  for (const auto& [s, cs] : x.terms()) {
    if (s >= alg.dim()) throw DomainError("blade outside the algebra");
    for (const auto& [t, ct] : y.terms()) {
      if (t >= alg.dim()) throw DomainError("blade outside the algebra");
      out.add(s ^ t, cs * ct * QuadNumber(alg.blade_coefficient(s, t)));
    }
  }
  return out;
}

Rational omega_squared(const CliffordAlgebra& alg) {
  const Blade full = static_cast<Blade>(alg.dim() - 1);
  return alg.blade_coefficient(full, full);
}

std::vector<CliffordElement> center(const CliffordAlgebra& alg, bool even_only) {
  const std::vector<Blade> basis = even_only ? alg.even_blades() : alg.all_blades();
  std::vector<Blade> tests;
  const std::size_t n = alg.n();
  if (even_only) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) tests.push_back((Blade{1} << i) | (Blade{1} << j));
  } else {
    for (std::size_t i = 0; i < n; ++i) tests.push_back(Blade{1} << i);
  }
  // Rows: coordinates of x*t - t*x over all blades, stacked over every test element t.
  QMatrix system(tests.size() * alg.dim(), basis.size());
  for (std::size_t ti = 0; ti < tests.size(); ++ti) {
    const Blade t = tests[ti];
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Blade s = basis[col];
      Rational diff = alg.blade_coefficient(s, t) - alg.blade_coefficient(t, s);
      system(ti * alg.dim() + (s ^ t), col) += diff;
    }
  }
  std::vector<CliffordElement> out;
  for (const auto& v : kernel_basis(system)) {
    CliffordElement x;
    for (std::size_t k = 0; k < v.size(); ++k) x.add(basis[k], QuadNumber(v[k]));
    out.push_back(std::move(x));
  }
  return out;
}

ExactMatrix left_multiplication(const CliffordElement& g, const CliffordAlgebra& alg) {
  ExactMatrix m(alg.dim(), alg.dim());
  for (Blade t = 0; t < alg.dim(); ++t)
    for (const auto& [s, c] : g.terms()) m(s ^ t, t) += c * QuadNumber(alg.blade_coefficient(s, t));
  return m;
}

ExactMatrix left_multiplication_even(const CliffordElement& g, const CliffordAlgebra& alg) {
  if (!g.is_even()) throw DomainError("left_multiplication_even: element is not even");
  const auto blades = alg.even_blades();
  std::vector<std::size_t> pos(alg.dim(), 0);
  for (std::size_t k = 0; k < blades.size(); ++k) pos[blades[k]] = k;
  ExactMatrix m(blades.size(), blades.size());
  for (std::size_t col = 0; col < blades.size(); ++col) {
    const Blade t = blades[col];
    for (const auto& [s, c] : g.terms()) m(pos[s ^ t], col) += c * QuadNumber(alg.blade_coefficient(s, t));
  }
  return m;
}

CliffordElement clifford_inverse(const CliffordElement& g, const CliffordAlgebra& alg) {
  ExactMatrix lg = left_multiplication(g, alg);
  ExactVector one(alg.dim(), QuadNumber(0));
  one[0] = 1;
  auto x = solve(lg, one);
  if (!x) throw DomainError("Clifford element is not invertible");
  CliffordElement inv;
  for (Blade s = 0; s < alg.dim(); ++s) inv.add(s, (*x)[s]);
  // A one-sided inverse in a finite-dimensional algebra is two-sided; check anyway.
  if (!(clifford_mul(inv, g, alg) == CliffordElement::scalar(1))) {
    throw DomainError("Clifford element is not invertible");
  }
  return inv;
}

QuadNumber quadratic_value(const ExactVector& v, const CliffordAlgebra& alg) {
  if (v.size() != alg.n()) throw DomainError("vector dimension does not match the algebra");
  QuadNumber s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += QuadNumber(alg.qvals()[i]) * v[i] * v[i];
  return s;
}

ExactVector spin_conjugate(const CliffordElement& g, const ExactVector& v, const CliffordAlgebra& alg) {
  if (v.size() != alg.n()) throw DomainError("vector dimension does not match the algebra");
  CliffordElement ginv = clifford_inverse(g, alg);
  CliffordElement w = clifford_mul(clifford_mul(g, CliffordElement::vector(v), alg), ginv, alg);
  if (!w.is_grade(1)) throw DomainError("g v g^-1 is not a vector; g is not admissible");
  ExactVector out(alg.n(), QuadNumber(0));
  for (std::size_t i = 0; i < alg.n(); ++i) out[i] = w.coeff(Blade{1} << i);
  return out;
}

ExactMatrix ks_embed(const ExactVector& v, const ExactVector& v0, const CliffordAlgebra& alg) {
  if (v.size() != alg.n() || v0.size() != alg.n()) {
    throw DomainError("ks_embed: vector dimension does not match the algebra");
  }
  if (quadratic_value(v0, alg).is_zero()) throw DomainError("ks_embed: v0 is isotropic");
  const auto blades = alg.even_blades();
  std::vector<std::size_t> pos(alg.dim(), 0);
  for (std::size_t k = 0; k < blades.size(); ++k) pos[blades[k]] = k;
  const CliffordElement ve = CliffordElement::vector(v);
  const CliffordElement v0e = CliffordElement::vector(v0);
  ExactMatrix m(blades.size(), blades.size());
  for (std::size_t col = 0; col < blades.size(); ++col) {
    CliffordElement image =
        clifford_mul(clifford_mul(ve, CliffordElement::blade(blades[col]), alg), v0e, alg);
    for (const auto& [s, c] : image.terms()) m(pos[s], col) = c;
  }
  return m;
}

Json clifford_to_json(const CliffordElement& x, const CliffordAlgebra& alg) {
  Json out;
  out["n"] = alg.n();
  Json terms = Json::array();
  for (const auto& [s, c] : x.terms()) {
    Json set = Json::array();
    for (std::size_t i = 0; i < alg.n(); ++i)
      if ((s >> i) & 1U) set.push_back(i + 1);
    Json term;
    term["set"] = std::move(set);
    term["coeff"] = quad_to_json(c);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace hodgelab
