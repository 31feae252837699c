#include "hodgelab/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hodgelab {

int sort_with_sign(Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

// ---- MultiTensor ----

MultiTensor MultiTensor::basis(std::size_t dim, const Index& idx, QuadNumber coeff) {
  MultiTensor t(dim, idx.size());
  t.add(idx, coeff);
  return t;
}

Variance MultiTensor::variance(std::size_t slot) const {
  if (slot >= degree_) throw DomainError("slot out of range");
  return variance_.empty() ? Variance::Std : variance_[slot];
}

void MultiTensor::add(const Index& idx, const QuadNumber& c) {
  if (idx.size() != degree_) throw DomainError("index length does not match tensor degree");
  for (auto i : idx)
    if (i >= dim_) throw DomainError("tensor index out of range");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QuadNumber MultiTensor::coeff(const Index& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? QuadNumber(0) : it->second;
}

void MultiTensor::require_compatible(const MultiTensor& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw DomainError("tensor shape mismatch");
}

MultiTensor& MultiTensor::operator+=(const MultiTensor& o) {
  require_compatible(o);
  for (const auto& [idx, c] : o.terms_) add(idx, c);
  return *this;
}

MultiTensor& MultiTensor::operator-=(const MultiTensor& o) {
  require_compatible(o);
  for (const auto& [idx, c] : o.terms_) add(idx, -c);
  return *this;
}

MultiTensor& MultiTensor::operator*=(const QuadNumber& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, c] : terms_) c *= s;
  return *this;
}

MultiTensor MultiTensor::permute_slots(const std::vector<std::size_t>& perm) const {
  if (perm.size() != degree_) throw DomainError("permutation length mismatch");
  std::vector<bool> seen(degree_, false);
  for (auto p : perm) {
    if (p >= degree_ || seen[p]) throw DomainError("not a permutation of the slots");
    seen[p] = true;
  }
  std::vector<Variance> var;
  if (!variance_.empty())
    for (auto p : perm) var.push_back(variance_[p]);
  MultiTensor out = var.empty() ? MultiTensor(dim_, degree_) : MultiTensor(dim_, var);
  Index moved(degree_);
  for (const auto& [idx, c] : terms_) {
    for (std::size_t j = 0; j < degree_; ++j) moved[j] = idx[perm[j]];
    out.add(moved, c);
  }
  return out;
}

MultiTensor tensor_product(const MultiTensor& a, const MultiTensor& b) {
  if (a.dim() != b.dim()) throw DomainError("tensor_product: base dimension mismatch");
  std::vector<Variance> var;
  for (std::size_t s = 0; s < a.degree(); ++s) var.push_back(a.variance(s));
  for (std::size_t s = 0; s < b.degree(); ++s) var.push_back(b.variance(s));
  MultiTensor out(a.dim(), var);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, ca * cb);
    }
  }
  return out;
}

// ---- WedgeElement ----

WedgeElement WedgeElement::basis(std::size_t dim, const Index& idx, QuadNumber coeff) {
  WedgeElement w(dim, idx.size());
  w.add(idx, coeff);
  return w;
}

WedgeElement WedgeElement::vector(const ExactVector& v) {
  WedgeElement w(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) w.add({i}, v[i]);
  return w;
}

void WedgeElement::add(const Index& idx, const QuadNumber& c) {
  if (idx.size() != degree_) throw DomainError("index length does not match wedge degree");
  for (auto i : idx)
    if (i >= dim_) throw DomainError("wedge index out of range");
  if (c.is_zero()) return;
  Index sorted = idx;
  int sign = sort_with_sign(sorted);
  if (sign == 0) return;
  QuadNumber v = sign > 0 ? c : -c;
  auto [it, inserted] = terms_.try_emplace(sorted, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QuadNumber WedgeElement::coeff(const Index& sorted_idx) const {
  auto it = terms_.find(sorted_idx);
  return it == terms_.end() ? QuadNumber(0) : it->second;
}

void WedgeElement::require_compatible(const WedgeElement& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw DomainError("wedge shape mismatch");
}

WedgeElement& WedgeElement::operator+=(const WedgeElement& o) {
  require_compatible(o);
  for (const auto& [idx, c] : o.terms_) add(idx, c);
  return *this;
}

WedgeElement& WedgeElement::operator-=(const WedgeElement& o) {
  require_compatible(o);
  for (const auto& [idx, c] : o.terms_) add(idx, -c);
  return *this;
}

WedgeElement& WedgeElement::operator*=(const QuadNumber& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, c] : terms_) c *= s;
  return *this;
}

WedgeElement wedge(const WedgeElement& a, const WedgeElement& b) {
  if (a.dim() != b.dim()) throw DomainError("wedge: base dimension mismatch");
  WedgeElement out(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, ca * cb);
    }
  }
  return out;
}

// ---- partitions and realizations ----

std::size_t Partition::total() const { return std::accumulate(parts.begin(), parts.end(), std::size_t{0}); }

void RealizationElement::add(const Index& concatenated, const QuadNumber& c) {
  if (concatenated.size() != partition_.total()) throw DomainError("realization key length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(concatenated, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiTensor RealizationElement::to_tensor() const {
  MultiTensor out(dim_, partition_.total());
  for (const auto& [key, c] : terms_) {
    MultiTensor acc = MultiTensor::basis(dim_, {}, c);
    std::size_t pos = 0;
    for (auto len : partition_.parts) {
      Index block(key.begin() + static_cast<std::ptrdiff_t>(pos),
                  key.begin() + static_cast<std::ptrdiff_t>(pos + len));
      acc = tensor_product(acc, wedge_to_tensor(WedgeElement::basis(dim_, block)));
      pos += len;
    }
    out += acc;
  }
  return out;
}

WedgeElement RealizationElement::to_copies_wedge() const {
  WedgeElement out(dim_ * partition_.parts.size(), partition_.total());
  for (const auto& [key, c] : terms_) {
    Index idx;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < partition_.parts.size(); ++j) {
      for (std::size_t t = 0; t < partition_.parts[j]; ++t) idx.push_back(j * dim_ + key[pos++]);
    }
    out.add(idx, c);
  }
  return out;
}

MultiTensor wedge_to_tensor(const WedgeElement& w) {
  MultiTensor out(w.dim(), w.degree());
  std::vector<std::size_t> perm(w.degree());
  for (const auto& [idx, c] : w.terms()) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      Index image(w.degree());
      for (std::size_t j = 0; j < perm.size(); ++j) image[j] = idx[perm[j]];
      Index probe = perm;
      int sign = sort_with_sign(probe);
      out.add(image, sign > 0 ? c : -c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

namespace {

// Enumerates assignments of positions 0..m-1 to blocks of the given sizes, each block in
// increasing position order. Calls f(order) with the concatenated position list.
template <class F>
void for_each_ordered_set_partition(const std::vector<std::size_t>& sizes, std::size_t m, F&& f) {
  std::vector<int> owner(m, -1);
  std::vector<std::size_t> order;
  order.reserve(m);
  std::function<void(std::size_t)> rec = [&](std::size_t block) {
    if (block == sizes.size()) {
      order.clear();
      for (std::size_t b = 0; b < sizes.size(); ++b)
        for (std::size_t p = 0; p < m; ++p)
          if (owner[p] == static_cast<int>(b)) order.push_back(p);
      f(order);
      return;
    }
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t start) {
      if (chosen.size() == sizes[block]) {
        rec(block + 1);
        return;
      }
      for (std::size_t p = start; p < m; ++p) {
        if (owner[p] != -1) continue;
        owner[p] = static_cast<int>(block);
        chosen.push_back(p);
        pick(p + 1);
        chosen.pop_back();
        owner[p] = -1;
      }
    };
    pick(0);
  };
  rec(0);
}

}  // namespace

RealizationElement realization_embed(const WedgeElement& w, const Partition& partition) {
  if (partition.total() != w.degree()) {
    throw DomainError("realization_embed: partition sums to " + std::to_string(partition.total()) +
                      " but the wedge has degree " + std::to_string(w.degree()));
  }
  RealizationElement out(w.dim(), partition);
  const std::size_t m = w.degree();
  for_each_ordered_set_partition(partition.parts, m, [&](const std::vector<std::size_t>& order) {
    Index probe = order;
    int sign = sort_with_sign(probe);
    for (const auto& [idx, c] : w.terms()) {
      Index key(m);
      for (std::size_t j = 0; j < m; ++j) key[j] = idx[order[j]];
      out.add(key, sign > 0 ? c : -c);
    }
  });
  return out;
}

WedgeElement diag_pullback(const WedgeElement& w, std::size_t copies) {
  if (copies == 0) throw DomainError("diag_pullback requires at least one copy");
  const std::size_t n = w.dim();
  WedgeElement out(n * copies, w.degree());
  const std::size_t r = w.degree();
  for (const auto& [idx, c] : w.terms()) {
    std::vector<std::size_t> choice(r, 0);
    while (true) {
      Index image(r);
      for (std::size_t j = 0; j < r; ++j) image[j] = choice[j] * n + idx[j];
      out.add(image, c);
      std::size_t j = 0;
      while (j < r && ++choice[j] == copies) choice[j++] = 0;
      if (j == r) break;
    }
  }
  return out;
}

WedgeElement proj_pullback(const WedgeElement& w, const std::vector<std::size_t>& J,
                           std::size_t total) {
  if (J.empty()) throw DomainError("proj_pullback: J must be nonempty");
  if (J.size() > total) throw DomainError("proj_pullback: |J| exceeds the number of copies");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] >= total) throw DomainError("proj_pullback: copy index out of range");
    if (i > 0 && J[i] <= J[i - 1]) throw DomainError("proj_pullback: J must be strictly increasing");
  }
  if (w.dim() % J.size() != 0) throw DomainError("proj_pullback: dimension not divisible by |J|");
  const std::size_t n = w.dim() / J.size();
  WedgeElement out(n * total, w.degree());
  for (const auto& [idx, c] : w.terms()) {
    Index image(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) image[j] = J[idx[j] / n] * n + idx[j] % n;
    out.add(image, c);
  }
  return out;
}

WedgeElement tensor_to_copies_wedge(const MultiTensor& t) {
  const std::size_t n = t.dim();
  const std::size_t k = t.degree();
  WedgeElement out(n * std::max<std::size_t>(k, 1), k);
  for (const auto& [idx, c] : t.terms()) {
    Index image(k);
    for (std::size_t j = 0; j < k; ++j) image[j] = j * n + idx[j];
    out.add(image, c);
  }
  return out;
}

MultiTensor contract_slot(const MultiTensor& t, std::size_t slot, const ExactVector& y,
                          const QMatrix& gram) {
  if (slot >= t.degree()) throw DomainError("contract_slot: slot out of range");
  if (y.size() != t.dim() || gram.rows() != t.dim() || gram.cols() != t.dim()) {
    throw DomainError("contract_slot: dimension mismatch");
  }
  ExactVector gy(t.dim(), QuadNumber(0));
  for (std::size_t a = 0; a < t.dim(); ++a)
    for (std::size_t b = 0; b < t.dim(); ++b)
      if (!is_zero(gram(a, b))) gy[a] += QuadNumber(gram(a, b)) * y[b];
  std::vector<Variance> var;
  for (std::size_t s = 0; s < t.degree(); ++s)
    if (s != slot) var.push_back(t.variance(s));
  MultiTensor out(t.dim(), var);
  for (const auto& [idx, c] : t.terms()) {
    if (gy[idx[slot]].is_zero()) continue;
    Index rest;
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (s != slot) rest.push_back(idx[s]);
    out.add(rest, c * gy[idx[slot]]);
  }
  return out;
}

bool is_alternating(const MultiTensor& t, const Partition& first, const Partition& second) {
  if (first.total() + second.total() != t.degree()) {
    throw DomainError("is_alternating: partitions do not match the tensor degree");
  }
  std::vector<std::size_t> blocks = first.parts;
  blocks.insert(blocks.end(), second.parts.begin(), second.parts.end());
  std::size_t start = 0;
  for (auto len : blocks) {
    for (std::size_t s = start; s + 1 < start + len; ++s) {
      std::vector<std::size_t> perm(t.degree());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::swap(perm[s], perm[s + 1]);
      MultiTensor sum = t + t.permute_slots(perm);
      if (!sum.is_zero()) return false;
    }
    start += len;
  }
  return true;
}

std::optional<QuadNumber> proportionality(const MultiTensor& a, const MultiTensor& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.dim() != b.dim() || a.degree() != b.degree()) return std::nullopt;
  const auto& [idx0, c0] = *b.terms().begin();
  QuadNumber lambda = a.coeff(idx0) / c0;
  MultiTensor diff = a - lambda * b;
  if (!diff.is_zero()) return std::nullopt;
  return lambda;
}

Json tensor_to_json(const MultiTensor& t) {
  Json out;
  out["degree"] = t.degree();
  out["dim"] = t.dim();
  Json terms = Json::array();
  for (const auto& [idx, c] : t.terms()) {
    Json term;
    term["idx"] = idx;
    term["coeff"] = quad_to_json(c);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

MultiTensor tensor_from_json(const Json& j, FieldSpec field) {
  MultiTensor t(j.at("dim").get<std::size_t>(), j.at("degree").get<std::size_t>());
  for (const auto& term : j.at("terms")) {
    t.add(term.at("idx").get<Index>(), quad_from_json(term.at("coeff"), field));
  }
  return t;
}

Json wedge_to_json(const WedgeElement& w) {
  Json out;
  out["degree"] = w.degree();
  out["dim"] = w.dim();
  Json terms = Json::array();
  for (const auto& [idx, c] : w.terms()) {
    Json term;
    term["idx"] = idx;
    term["coeff"] = quad_to_json(c);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace hodgelab
