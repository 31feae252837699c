#include "hodgelab/carrier.hpp"

#include <numeric>

namespace hodgelab {

std::string to_string(const CarrierExpr& c) {
  using K = CarrierExpr::Kind;
  auto list = [](const std::vector<CarrierExpr>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + to_string(parts[i]);
    return s;
  };
  switch (c.kind) {
    case K::Std: return "std";
    case K::Dual: return "dual";
    case K::Sum: return "sum(" + list(c.children) + ")";
    case K::Pow: return "pow(" + to_string(c.children[0]) + "," + std::to_string(c.k) + ")";
    case K::Wedge: return "wedge(" + std::to_string(c.k) + "," + to_string(c.children[0]) + ")";
    case K::Tensor: return "tensor(" + std::to_string(c.k) + "," + to_string(c.children[0]) + ")";
    case K::Prod: return "prod(" + list(c.children) + ")";
  }
  return "?";
}

namespace {

std::optional<std::size_t> checked_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) return std::nullopt;
  if (a * b > cap) return std::nullopt;
  return a * b;
}

std::optional<std::size_t> binomial(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    c *= static_cast<unsigned long>(n - i);
    c /= static_cast<unsigned long>(i + 1);
  }
  if (c > Integer(static_cast<unsigned long>(std::min<std::size_t>(cap, static_cast<std::size_t>(-1) / 2)))) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(c.get_ui());
}

void require_children(const CarrierExpr& c) {
  using K = CarrierExpr::Kind;
  if ((c.kind == K::Pow || c.kind == K::Wedge || c.kind == K::Tensor) && c.children.size() != 1) {
    throw DomainError("malformed carrier: " + to_string(c));
  }
  if ((c.kind == K::Sum || c.kind == K::Prod) && c.children.empty()) {
    throw DomainError("malformed carrier: empty sum or product");
  }
}

}  // namespace

std::optional<std::size_t> carrier_dim(const CarrierExpr& c, std::size_t n, std::size_t cap) {
  using K = CarrierExpr::Kind;
  require_children(c);
  std::optional<std::size_t> out;
  switch (c.kind) {
    case K::Std:
    case K::Dual:
      out = n;
      break;
    case K::Sum: {
      std::size_t total = 0;
      for (const auto& part : c.children) {
        auto d = carrier_dim(part, n, cap);
        if (!d || total + *d > cap) return std::nullopt;
        total += *d;
      }
      out = total;
      break;
    }
    case K::Pow: {
      auto d = carrier_dim(c.children[0], n, cap);
      if (!d) return std::nullopt;
      out = checked_mul(*d, c.k, cap);
      break;
    }
    case K::Wedge: {
      auto d = carrier_dim(c.children[0], n, cap);
      if (!d) return std::nullopt;
      out = binomial(*d, c.k, cap);
      break;
    }
    case K::Tensor: {
      auto d = carrier_dim(c.children[0], n, cap);
      if (!d) return std::nullopt;
      std::optional<std::size_t> acc = 1;
      for (std::size_t i = 0; i < c.k && acc; ++i) acc = checked_mul(*acc, *d, cap);
      out = acc;
      break;
    }
    case K::Prod: {
      std::optional<std::size_t> acc = 1;
      for (const auto& part : c.children) {
        auto d = carrier_dim(part, n, cap);
        if (!d) return std::nullopt;
        acc = checked_mul(*acc, *d, cap);
        if (!acc) return std::nullopt;
      }
      out = acc;
      break;
    }
  }
  if (out && *out > cap) return std::nullopt;
  return out;
}

std::size_t carrier_degree(const CarrierExpr& c) {
  using K = CarrierExpr::Kind;
  require_children(c);
  switch (c.kind) {
    case K::Std:
    case K::Dual:
      return 1;
    case K::Sum: {
      std::size_t m = 0;
      for (const auto& part : c.children) m = std::max(m, carrier_degree(part));
      return m;
    }
    case K::Pow:
      return carrier_degree(c.children[0]);
    case K::Wedge:
    case K::Tensor:
      return c.k * carrier_degree(c.children[0]);
    case K::Prod: {
      std::size_t s = 0;
      for (const auto& part : c.children) s += carrier_degree(part);
      return s;
    }
  }
  return 0;
}

std::optional<std::vector<Variance>> tensor_slots(const CarrierExpr& c) {
  using K = CarrierExpr::Kind;
  switch (c.kind) {
    case K::Std:
      return std::vector<Variance>{Variance::Std};
    case K::Dual:
      return std::vector<Variance>{Variance::Dual};
    case K::Tensor: {
      auto inner = tensor_slots(c.children.at(0));
      if (!inner) return std::nullopt;
      std::vector<Variance> out;
      for (std::size_t i = 0; i < c.k; ++i) out.insert(out.end(), inner->begin(), inner->end());
      return out;
    }
    case K::Prod: {
      std::vector<Variance> out;
      for (const auto& part : c.children) {
        auto inner = tensor_slots(part);
        if (!inner) return std::nullopt;
        out.insert(out.end(), inner->begin(), inner->end());
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

std::size_t combination_rank(const Index& sorted, std::size_t n) {
  const std::size_t k = sorted.size();
  std::size_t rank = 0;
  std::size_t next = 0;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t v = next; v < sorted[j]; ++v) rank += *binomial(n - 1 - v, k - 1 - j, static_cast<std::size_t>(-1));
    next = sorted[j] + 1;
  }
  return rank;
}

namespace {

std::vector<Index> combinations(std::size_t n, std::size_t k) {
  std::vector<Index> out;
  if (k > n) return out;
  Index idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    out.push_back(idx);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

SparseCols from_dense(const QMatrix& m) {
  SparseCols out{m.rows(), std::vector<SparseVec>(m.cols())};
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) out.cols[j].emplace(i, m(i, j));
  return out;
}

// Shared by tensor(k, c) and prod(c_1, ..., c_k): factors[j] acts on slot j.
SparseCols product_action(const std::vector<SparseCols>& factors, ActionMode mode) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.dim;
  SparseCols out{total, std::vector<SparseVec>(total)};
  const std::size_t k = factors.size();
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t j = k; j-- > 1;) stride[j - 1] = stride[j] * factors[j].dim;
  std::vector<std::size_t> digits(k);
  for (std::size_t col = 0; col < total; ++col) {
    std::size_t rest = col;
    for (std::size_t j = 0; j < k; ++j) {
      digits[j] = rest / stride[j];
      rest %= stride[j];
    }
    SparseVec& image = out.cols[col];
    if (mode == ActionMode::Derivation) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t base = col - digits[j] * stride[j];
        for (const auto& [u, v] : factors[j].cols[digits[j]]) {
          add_entry(image, base + u * stride[j], v);
        }
      }
    } else {
      SparseVec acc{{0, Rational(1)}};
      for (std::size_t j = 0; j < k; ++j) {
        SparseVec next;
        for (const auto& [pos, a] : acc)
          for (const auto& [u, v] : factors[j].cols[digits[j]]) add_entry(next, pos + u * stride[j], a * v);
        acc = std::move(next);
      }
      image = std::move(acc);
    }
  }
  return out;
}

SparseCols wedge_action(const SparseCols& inner, std::size_t k, ActionMode mode) {
  const std::size_t n = inner.dim;
  const auto basis = combinations(n, k);
  SparseCols out{basis.size(), std::vector<SparseVec>(basis.size())};
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Index& idx = basis[col];
    SparseVec& image = out.cols[col];
    if (mode == ActionMode::Derivation) {
      for (std::size_t j = 0; j < k; ++j) {
        for (const auto& [u, v] : inner.cols[idx[j]]) {
          Index moved = idx;
          moved[j] = u;
          int sign = sort_with_sign(moved);
          if (sign == 0) continue;
          add_entry(image, combination_rank(moved, n), sign > 0 ? v : Rational(-v));
        }
      }
    } else {
      std::map<Index, Rational> acc{{Index{}, Rational(1)}};
      for (std::size_t j = 0; j < k; ++j) {
        std::map<Index, Rational> next;
        for (const auto& [prefix, a] : acc) {
          for (const auto& [u, v] : inner.cols[idx[j]]) {
            Index ext = prefix;
            ext.push_back(u);
            auto [it, inserted] = next.try_emplace(ext, a * v);
            if (!inserted) it->second += a * v;
          }
        }
        acc = std::move(next);
      }
      for (const auto& [tuple, a] : acc) {
        if (is_zero(a)) continue;
        Index sorted = tuple;
        int sign = sort_with_sign(sorted);
        if (sign == 0) continue;
        add_entry(image, combination_rank(sorted, n), sign > 0 ? a : Rational(-a));
      }
    }
  }
  return out;
}

SparseCols action_impl(const CarrierExpr& c, const QMatrix& x, const QMatrix& dual_matrix, ActionMode mode) {
  using K = CarrierExpr::Kind;
  switch (c.kind) {
    case K::Std:
      return from_dense(x);
    case K::Dual:
      return from_dense(dual_matrix);
    case K::Sum:
    case K::Pow: {
      std::vector<SparseCols> parts;
      if (c.kind == K::Sum) {
        for (const auto& part : c.children) parts.push_back(action_impl(part, x, dual_matrix, mode));
      } else {
        SparseCols one = action_impl(c.children[0], x, dual_matrix, mode);
        parts.assign(c.k, one);
      }
      std::size_t total = 0;
      for (const auto& p : parts) total += p.dim;
      SparseCols out{total, {}};
      std::size_t offset = 0;
      for (const auto& p : parts) {
        for (const auto& col : p.cols) {
          SparseVec shifted;
          for (const auto& [i, v] : col) shifted.emplace(offset + i, v);
          out.cols.push_back(std::move(shifted));
        }
        offset += p.dim;
      }
      return out;
    }
    case K::Tensor: {
      SparseCols one = action_impl(c.children[0], x, dual_matrix, mode);
      if (c.k == 0) return SparseCols{1, {mode == ActionMode::Group ? SparseVec{{0, Rational(1)}} : SparseVec{}}};
      return product_action(std::vector<SparseCols>(c.k, one), mode);
    }
    case K::Prod: {
      std::vector<SparseCols> parts;
      for (const auto& part : c.children) parts.push_back(action_impl(part, x, dual_matrix, mode));
      return product_action(parts, mode);
    }
    case K::Wedge: {
      SparseCols inner = action_impl(c.children[0], x, dual_matrix, mode);
      if (c.k == 0) return SparseCols{1, {mode == ActionMode::Group ? SparseVec{{0, Rational(1)}} : SparseVec{}}};
      return wedge_action(inner, c.k, mode);
    }
  }
  throw DomainError("malformed carrier");
}

}  // namespace

SparseCols carrier_action(const CarrierExpr& c, const QMatrix& x, ActionMode mode) {
  if (!x.is_square()) throw DomainError("carrier_action: matrix must be square");
  carrier_dim(c, x.rows());  // validates the tree
  QMatrix dual_matrix;
  if (mode == ActionMode::Derivation) {
    dual_matrix = -x.transpose();
  } else {
    auto inv = inverse(x);
    if (!inv) throw DomainError("carrier_action: group element is not invertible");
    dual_matrix = inv->transpose();
  }
  return action_impl(c, x, dual_matrix, mode);
}

QMatrix carrier_action_dense(const CarrierExpr& c, const QMatrix& x, ActionMode mode) {
  SparseCols s = carrier_action(c, x, mode);
  QMatrix out(s.dim, s.dim);
  for (std::size_t j = 0; j < s.cols.size(); ++j)
    for (const auto& [i, v] : s.cols[j]) out(i, j) = v;
  return out;
}

SparseVec tensor_to_carrier(const MultiTensor& t) {
  SparseVec out;
  for (const auto& [idx, c] : t.terms()) {
    if (!c.is_rational()) throw DomainError("carrier vectors must have rational coefficients");
    std::size_t flat = 0;
    for (auto i : idx) flat = flat * t.dim() + i;
    out.emplace(flat, c.a());
  }
  return out;
}

MultiTensor carrier_to_tensor(const SparseVec& v, std::size_t base_dim, std::size_t degree) {
  MultiTensor t(base_dim, degree);
  for (const auto& [flat, c] : v) {
    Index idx(degree);
    std::size_t rest = flat;
    for (std::size_t j = degree; j-- > 0;) {
      idx[j] = rest % base_dim;
      rest /= base_dim;
    }
    t.add(idx, QuadNumber(c));
  }
  return t;
}

SparseVec wedge_to_carrier(const WedgeElement& w) {
  SparseVec out;
  for (const auto& [idx, c] : w.terms()) {
    if (!c.is_rational()) throw DomainError("carrier vectors must have rational coefficients");
    out.emplace(combination_rank(idx, w.dim()), c.a());
  }
  return out;
}

}  // namespace hodgelab
