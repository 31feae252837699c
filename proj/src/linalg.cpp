#include "hodgelab/matrix.hpp"

namespace hodgelab {

ExactMatrix to_exact(const QMatrix& m) {
  ExactMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = QuadNumber(m(i, j));
  return e;
}

QMatrix to_rational(const ExactMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_rational()) throw DomainError("matrix entry is not rational");
      q(i, j) = m(i, j).a();
    }
  return q;
}

ExactVector to_exact(const QVector& v) {
  ExactVector e;
  e.reserve(v.size());
  for (const auto& x : v) e.emplace_back(x);
  return e;
}

namespace {

void add_column_and_row(QMatrix& a, QMatrix& p, std::size_t target, std::size_t source,
                        const Rational& factor) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) a(i, target) += factor * a(i, source);
  for (std::size_t j = 0; j < n; ++j) a(target, j) += factor * a(source, j);
  for (std::size_t i = 0; i < n; ++i) p(i, target) += factor * p(i, source);
}

// Scale column j of P to a primitive integer vector whose first nonzero entry is positive.
void normalize_column(QMatrix& p, std::size_t j) {
  Integer den_lcm = 1;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (is_zero(p(i, j))) continue;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), p(i, j).get_den_mpz_t());
  }
  Integer num_gcd = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational scaled = p(i, j) * Rational(den_lcm);
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_num_mpz_t());
  }
  if (num_gcd == 0) return;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (!is_zero(p(i, j))) {
      if (sgn(p(i, j)) < 0) scale = -scale;
      break;
    }
  }
  for (std::size_t i = 0; i < p.rows(); ++i) p(i, j) *= scale;
}

}  // namespace

Diagonalization congruent_diagonalize(const QMatrix& gram) {
  if (!gram.is_symmetric()) throw DomainError("congruent_diagonalize: Gram matrix not symmetric");
  const std::size_t n = gram.rows();
  QMatrix a = gram;
  QMatrix p = QMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t j = k + 1;
      while (j < n && is_zero(a(k, j))) ++j;
      if (j == n) throw DegenerateError("congruent_diagonalize: Gram matrix is degenerate");
      Rational plus = a(k, k) + 2 * a(k, j) + a(j, j);
      Rational factor = is_zero(plus) ? Rational(-1) : Rational(1);
      add_column_and_row(a, p, k, j, factor);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (is_zero(a(k, j))) continue;
      Rational f = a(k, j) / a(k, k);
      add_column_and_row(a, p, j, k, -f);
    }
  }
  for (std::size_t j = 0; j < n; ++j) normalize_column(p, j);
  QMatrix d = p.transpose() * gram * p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !is_zero(d(i, j))) throw Error("congruent_diagonalize: internal failure");
  return {std::move(p), std::move(d)};
}

Signature signature(const QMatrix& gram) {
  auto [p, d] = congruent_diagonalize(gram);
  Signature s;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (sgn(d(i, i)) > 0) ++s.positive;
    if (sgn(d(i, i)) < 0) ++s.negative;
  }
  return s;
}

}  // namespace hodgelab
