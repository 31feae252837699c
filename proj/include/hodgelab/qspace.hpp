#pragma once

#include <array>
#include <string>
#include <vector>

#include "hodgelab/matrix.hpp"

namespace hodgelab {

/// Finite-dimensional rational vector space with a symmetric nondegenerate Gram matrix.
class QuadraticSpace {
 public:
  /// Validates symmetry and nondegeneracy. Missing labels default to e1, e2, ...
  explicit QuadraticSpace(QMatrix gram, std::vector<std::string> labels = {});

  std::size_t dim() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Rational pair(const QVector& x, const QVector& y) const;
  Rational determinant() const { return hodgelab::determinant(gram_); }
  Signature signature() const { return hodgelab::signature(gram_); }

  friend QuadraticSpace direct_sum(const QuadraticSpace& a, const QuadraticSpace& b);

 private:
  QMatrix gram_;
  std::vector<std::string> labels_;
};

QuadraticSpace hyperbolic_plane();
QuadraticSpace diagonal_space(const std::vector<Rational>& values);

/// U + U + <a> + <b>, the rank-6 lattice of a K3 surface of Picard number 16.
QuadraticSpace k3_16_lattice(long a, long b);

/// Q(sqrt d) with d the squarefree part of -ab.
FieldSpec weil_cm_field(long a, long b);

/// Basis (reduced echelon) of {v : pair(v, w) = 0 for every w in `vectors`}.
std::vector<QVector> orthogonal_complement(const QuadraticSpace& space,
                                           const std::vector<QVector>& vectors);

/// (a, b, c, d) counts of T, NS, H^0, H^4 factors in the Kunneth summands of H^{2k}(X^n).
using KunnethTuple = std::array<std::size_t, 4>;

/// All nonnegative solutions of 2k = 2a + 2b + 4d and a + b + c + d = n, sorted lexicographically.
std::vector<KunnethTuple> kunneth_summands(std::size_t n, std::size_t k);

}  // namespace hodgelab
