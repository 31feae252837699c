#include "hodgelab/sparse.hpp"

namespace hodgelab {

void add_entry(SparseVec& y, std::size_t i, const Rational& v) {
  if (is_zero(v)) return;
  auto [it, inserted] = y.try_emplace(i, v);
  if (!inserted) {
    it->second += v;
    if (is_zero(it->second)) y.erase(it);
  }
}

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (is_zero(a)) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, a * v);
    if (!inserted) {
      it->second += a * v;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

SparseVec scaled(const SparseVec& x, const Rational& a) {
  SparseVec out;
  if (is_zero(a)) return out;
  for (const auto& [i, v] : x) out.emplace(i, a * v);
  return out;
}

SparseVec SparseCols::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [j, c] : v) {
    if (j >= cols.size()) throw DomainError("sparse vector index outside the matrix");
    axpy(out, c, cols[j]);
  }
  return out;
}

SparseVec SparseEchelon::reduce(SparseVec v) const {
  // Rows are fully reduced, so each pivot needs at most one elimination step.
  for (const auto& [pivot, row] : rows_) {
    auto it = v.find(pivot);
    if (it == v.end()) continue;
    Rational c = it->second;
    axpy(v, -c, row);
  }
  return v;
}

bool SparseEchelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t pivot = v.begin()->first;
  const Rational lead = v.begin()->second;
  if (lead != 1) v = scaled(v, 1 / lead);
  for (auto& [p, row] : rows_) {
    auto it = row.find(pivot);
    if (it == row.end()) continue;
    Rational c = it->second;
    axpy(row, -c, v);
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

std::vector<SparseVec> SparseEchelon::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vectors) {
  SparseEchelon ech;
  for (const auto& v : vectors) ech.insert(v);
  return ech.basis();
}

std::vector<SparseVec> kernel_of_images(const std::vector<SparseVec>& images) {
  struct Pivot {
    SparseVec image;
    SparseVec combo;
  };
  std::map<std::size_t, Pivot> pivots;
  std::vector<SparseVec> kernel;
  for (std::size_t j = 0; j < images.size(); ++j) {
    SparseVec img = images[j];
    SparseVec combo{{j, Rational(1)}};
    while (!img.empty()) {
      auto lead = img.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      Rational c = lead->second / p->second.image.begin()->second;
      axpy(img, -c, p->second.image);
      axpy(combo, -c, p->second.combo);
    }
    if (img.empty()) {
      kernel.push_back(std::move(combo));
    } else {
      const std::size_t key = img.begin()->first;
      pivots.emplace(key, Pivot{std::move(img), std::move(combo)});
    }
  }
  return kernel;
}

SparseVec combine(const std::vector<SparseVec>& basis, const SparseVec& coefficients) {
  SparseVec out;
  for (const auto& [j, c] : coefficients) axpy(out, c, basis.at(j));
  return out;
}

}  // namespace hodgelab
