#pragma once

#include <random>
#include <vector>

#include "hodgelab/descent.hpp"
#include "hodgelab/matrix.hpp"
#include "hodgelab/sparse.hpp"

namespace testing_support {

using namespace hodgelab;

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational rand_rational(long span = 5, long den = 3) {
  Rational x(rand_int(-span, span), rand_int(1, den));
  x.canonicalize();
  return x;
}

inline Rational rand_nonzero_rational(long span = 5, long den = 3) {
  Rational x = 0;
  while (is_zero(x)) x = rand_rational(span, den);
  return x;
}

inline QMatrix rand_matrix(std::size_t r, std::size_t c, long span = 3) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(-span, span);
  return m;
}

inline QMatrix rand_invertible(std::size_t n, long span = 2) {
  while (true) {
    QMatrix m = rand_matrix(n, n, span);
    if (!is_zero(determinant(m))) return m;
  }
}

inline QVector rand_vector(std::size_t n, long span = 3) {
  QVector v(n);
  for (auto& x : v) x = rand_int(-span, span);
  return v;
}

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

/// Nondegenerate symmetric Gram P^T D P with random nonzero D.
inline QMatrix rand_gram(std::size_t n) {
  QMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = rand_nonzero_rational(4, 1);
  QMatrix p = rand_invertible(n);
  return p.transpose() * d * p;
}

/// Q(sqrt d) structure on Q^{2r}: J = P J0 P^{-1}, J0 block diagonal with blocks [[0, d], [1, 0]].
inline QMatrix rand_structure_matrix(std::int64_t d, std::size_t r) {
  QMatrix j0(2 * r, 2 * r);
  for (std::size_t k = 0; k < r; ++k) {
    j0(2 * k, 2 * k + 1) = Rational(static_cast<long>(d));
    j0(2 * k + 1, 2 * k) = 1;
  }
  QMatrix p = rand_invertible(2 * r);
  return p * j0 * *inverse(p);
}

inline QuadNumber rand_element(FieldSpec f, long span = 3) {
  return QuadNumber(Rational(rand_int(-span, span)), Rational(rand_int(-span, span)), f);
}

/// E-coordinates from the Q-basis b_1, J b_1, ..., computed by a direct solve.
inline std::vector<QuadNumber> e_coords(const EStructure& s, const QVector& x) {
  const QMatrix qinv = *inverse(s.q_basis());
  QVector c(x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) c[i] += qinv(i, j) * x[j];
  std::vector<QuadNumber> out;
  for (std::size_t k = 0; k < s.e_dim(); ++k) out.emplace_back(c[2 * k], c[2 * k + 1], s.field());
  return out;
}

/// Random E-valued form phi0 (symmetric, or Hermitian) and psi = Tr phi0 on the standard basis.
struct FormPair {
  ExactMatrix phi0;
  QMatrix psi;
};

inline FormPair rand_compatible_form(const EStructure& s, bool hermitian) {
  const FieldSpec f = s.field();
  const std::size_t r = s.e_dim();
  const std::size_t n = s.space_dim();
  while (true) {
    ExactMatrix phi(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        QuadNumber x = rand_element(f);
        if (i == j && hermitian) x = QuadNumber(x.a());
        phi(i, j) = x;
        phi(j, i) = hermitian ? x.conj() : x;
      }
    QMatrix psi(n, n);
    std::vector<std::vector<QuadNumber>> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(e_coords(s, unit_vector(n, i)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        QuadNumber acc = 0;
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t l = 0; l < r; ++l) {
            const QuadNumber xk = hermitian ? coords[i][k].conj() : coords[i][k];
            acc += field_mul(field_mul(xk, phi(k, l), f), coords[j][l], f);
          }
        psi(i, j) = 2 * acc.a();
      }
    if (!is_zero(determinant(psi))) return {phi, psi};
  }
}

inline QMatrix stack_rows(const std::vector<QVector>& rows, std::size_t width) {
  QMatrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

inline QVector dense(const SparseVec& v, std::size_t dim) {
  QVector out(dim, Rational(0));
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

/// Rank of a list of sparse vectors via dense elimination.
inline std::size_t span_rank(const std::vector<SparseVec>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  std::vector<QVector> rows;
  for (const auto& v : vs) rows.push_back(dense(v, dim));
  return rank(stack_rows(rows, dim));
}

}  // namespace testing_support
