#include "hodgelab/qspace.hpp"

#include <algorithm>

namespace hodgelab {

QuadraticSpace::QuadraticSpace(QMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_square()) throw DomainError("Gram matrix must be square");
  if (!gram_.is_symmetric()) throw DomainError("Gram matrix must be symmetric");
  if (gram_.rows() > 0 && is_zero(hodgelab::determinant(gram_))) {
    throw DegenerateError("Gram matrix is degenerate");
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < gram_.rows(); ++i) labels_.push_back("e" + std::to_string(i + 1));
  }
  if (labels_.size() != gram_.rows()) throw DomainError("label count does not match dimension");
}

Rational QuadraticSpace::pair(const QVector& x, const QVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DomainError("vector dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim(); ++j) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

QuadraticSpace direct_sum(const QuadraticSpace& a, const QuadraticSpace& b) {
  const std::size_t n = a.dim() + b.dim();
  QMatrix g(n, n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) g(a.dim() + i, a.dim() + j) = b.gram()(i, j);
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  // Relabel on collision so labels stay unique in sums of identical blocks.
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j]) labels[i] += "'";
  return QuadraticSpace(std::move(g), std::move(labels));
}

QuadraticSpace hyperbolic_plane() {
  return QuadraticSpace(QMatrix::from_rows({{0, 1}, {1, 0}}), {"e", "f"});
}

QuadraticSpace diagonal_space(const std::vector<Rational>& values) {
  QMatrix g(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) g(i, i) = values[i];
  return QuadraticSpace(std::move(g));
}

QuadraticSpace k3_16_lattice(long a, long b) {
  if (a >= 0 || b >= 0) throw DomainError("k3_16_lattice requires negative a and b");
  QuadraticSpace u1(QMatrix::from_rows({{0, 1}, {1, 0}}), {"e1", "f1"});
  QuadraticSpace u2(QMatrix::from_rows({{0, 1}, {1, 0}}), {"e2", "f2"});
  QuadraticSpace la(QMatrix::from_rows({{Rational(a)}}), {"x"});
  QuadraticSpace lb(QMatrix::from_rows({{Rational(b)}}), {"y"});
  return direct_sum(direct_sum(u1, u2), direct_sum(la, lb));
}

FieldSpec weil_cm_field(long a, long b) {
  if (a >= 0 || b >= 0) throw DomainError("weil_cm_field requires negative a and b");
  Integer minus_ab = -(Integer(a) * Integer(b));
  Integer d = squarefree_part(minus_ab);
  return FieldSpec::quadratic(d.get_si());
}

std::vector<QVector> orthogonal_complement(const QuadraticSpace& space,
                                           const std::vector<QVector>& vectors) {
  const std::size_t n = space.dim();
  QMatrix constraints(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != n) throw DomainError("vector dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) s += vectors[r][i] * space.gram()(i, j);
      constraints(r, j) = s;
    }
  }
  auto basis = kernel_basis(constraints);
  if (basis.empty()) return basis;
  // Canonical form: reduced echelon basis of the span.
  auto red = rref(QMatrix::from_rows(basis));
  std::vector<QVector> out;
  for (std::size_t i = 0; i < red.pivots.size(); ++i) out.push_back(red.reduced.row(i));
  return out;
}

std::vector<KunnethTuple> kunneth_summands(std::size_t n, std::size_t k) {
  if (n == 0) throw DomainError("kunneth_summands requires n >= 1");
  std::vector<KunnethTuple> out;
  for (std::size_t d = 0; 2 * d <= k && d <= n; ++d) {
    const std::size_t ab = k - 2 * d;
    if (ab + d > n) continue;
    for (std::size_t a = 0; a <= ab; ++a) out.push_back({a, ab - a, n - ab - d, d});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hodgelab
