#pragma once

#include <map>
#include <vector>

#include "hodgelab/scalar.hpp"

namespace hodgelab {

/// Sparse rational vector; no stored zeros.
using SparseVec = std::map<std::size_t, Rational>;

void add_entry(SparseVec& y, std::size_t i, const Rational& v);
void axpy(SparseVec& y, const Rational& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Rational& a);

/// Square sparse matrix stored as column images.
struct SparseCols {
  std::size_t dim = 0;
  std::vector<SparseVec> cols;

  SparseVec apply(const SparseVec& v) const;
};

/// Incremental row echelon form; rows are kept fully reduced against each other.
class SparseEchelon {
 public:
  /// Returns true when v was independent of the rows already present.
  bool insert(SparseVec v);
  /// Reduces v against the current rows.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  /// Rows in increasing pivot order, normalized to leading coefficient 1.
  std::vector<SparseVec> basis() const;

 private:
  std::map<std::size_t, SparseVec> rows_;  // pivot -> row
};

/// Canonical reduced basis of span(vectors).
std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vectors);

/// Coefficient vectors c with sum_j c_j images[j] = 0, one per dependency found.
std::vector<SparseVec> kernel_of_images(const std::vector<SparseVec>& images);

/// sum_j c_j basis[j].
SparseVec combine(const std::vector<SparseVec>& basis, const SparseVec& coefficients);

}  // namespace hodgelab
