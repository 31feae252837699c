#include "hodgelab/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <mutex>
#include <set>
#include <string>
#include <thread>

namespace hodgelab {

LieRep make_rep(const LieAlgebra& lie, CarrierExpr carrier, std::vector<QMatrix> extra) {
  for (const auto& b : lie.basis)
    if (b.rows() != lie.n || b.cols() != lie.n) throw DomainError("Lie basis matrix has the wrong size");
  for (const auto& g : extra) {
    if (g.rows() != lie.n || g.cols() != lie.n) throw DomainError("group element has the wrong size");
    if (!inverse(g)) throw DomainError("group element is not invertible");
  }
  if (!is_bracket_closed(lie)) throw DomainError("Lie basis is not closed under the bracket");
  carrier_dim(carrier, lie.n);
  return {lie.n, lie.basis, std::move(carrier), std::move(extra)};
}

std::size_t worker_count() {
  if (const char* env = std::getenv("HODGELAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

template <class F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_diagonal(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !is_zero(m(i, j))) return false;
  return true;
}

std::vector<SparseVec> restrict_kernel(const std::vector<SparseVec>& kernel,
                                       const std::function<SparseVec(const SparseVec&)>& op) {
  std::vector<SparseVec> images(kernel.size());
  parallel_for(kernel.size(), [&](std::size_t i) { images[i] = op(kernel[i]); });
  std::vector<SparseVec> out;
  for (const auto& combo : kernel_of_images(images)) out.push_back(combine(kernel, combo));
  return out;
}

}  // namespace

std::vector<SparseVec> invariant_basis(const LieRep& rep) {
  const std::size_t dim = *carrier_dim(rep.carrier, rep.base_dim);
  std::vector<SparseCols> actions(rep.basis.size());
  parallel_for(rep.basis.size(), [&](std::size_t i) {
    actions[i] = carrier_action(rep.carrier, rep.basis[i], ActionMode::Derivation);
  });

  // Diagonal basis elements act diagonally on every carrier: start from their common zero weight.
  std::vector<bool> done(rep.basis.size(), false);
  std::vector<SparseVec> kernel;
  bool have_diagonal = false;
  for (std::size_t i = 0; i < rep.basis.size(); ++i) {
    if (is_diagonal(rep.basis[i])) {
      have_diagonal = true;
      done[i] = true;
    }
  }
  if (have_diagonal) {
    for (std::size_t t = 0; t < dim; ++t) {
      bool zero = true;
      for (std::size_t i = 0; i < rep.basis.size() && zero; ++i)
        if (done[i] && !actions[i].cols[t].empty()) zero = false;
      if (zero) kernel.push_back(SparseVec{{t, Rational(1)}});
    }
  } else {
    for (std::size_t t = 0; t < dim; ++t) kernel.push_back(SparseVec{{t, Rational(1)}});
  }

  for (std::size_t i = 0; i < rep.basis.size() && !kernel.empty(); ++i) {
    if (done[i]) continue;
    const SparseCols& a = actions[i];
    kernel = restrict_kernel(kernel, [&a](const SparseVec& v) { return a.apply(v); });
  }
  for (const auto& g : rep.extra_group_elements) {
    if (kernel.empty()) break;
    SparseCols ga = carrier_action(rep.carrier, g, ActionMode::Group);
    kernel = restrict_kernel(kernel, [&ga](const SparseVec& v) {
      SparseVec w = ga.apply(v);
      axpy(w, Rational(-1), v);
      return w;
    });
  }
  return canonical_basis(kernel);
}

bool is_invariant(const LieRep& rep, const SparseVec& v) {
  for (const auto& b : rep.basis)
    if (!carrier_action(rep.carrier, b, ActionMode::Derivation).apply(v).empty()) return false;
  for (const auto& g : rep.extra_group_elements) {
    SparseVec w = carrier_action(rep.carrier, g, ActionMode::Group).apply(v);
    axpy(w, Rational(-1), v);
    if (!w.empty()) return false;
  }
  return true;
}

std::vector<SparseVec> complete_contractions(std::size_t s, std::size_t dim_w) {
  if (s == 0) throw DomainError("complete_contractions requires s >= 1");
  if (dim_w == 0) throw DomainError("complete_contractions requires a nonzero dimension");
  std::vector<std::size_t> sigma(s);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<SparseVec> out;
  do {
    SparseVec v;
    std::vector<std::size_t> idx(s, 0);
    while (true) {
      // Flat index of (idx_0..idx_{s-1}; idx_{sigma(0)}..idx_{sigma(s-1)}).
      std::size_t flat = 0;
      for (std::size_t j = 0; j < s; ++j) flat = flat * dim_w + idx[j];
      for (std::size_t j = 0; j < s; ++j) flat = flat * dim_w + idx[sigma[j]];
      v.emplace(flat, Rational(1));
      std::size_t j = 0;
      while (j < s && ++idx[j] == dim_w) idx[j++] = 0;
      if (j == s) break;
    }
    out.push_back(std::move(v));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

namespace {

std::size_t generator_degree(const Generator& g) {
  return std::visit([](const auto& x) { return x.degree(); }, g);
}

// Calls f(list) for every nondecreasing list of generator indices with total degree `target`.
void for_each_multiset(const std::vector<std::size_t>& degrees, std::size_t target, std::size_t max_factors,
                       const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t remaining) {
    if (remaining == 0) {
      if (!chosen.empty()) f(chosen);
      return;
    }
    if (chosen.size() == max_factors) return;
    for (std::size_t g = start; g < degrees.size(); ++g) {
      if (degrees[g] == 0 || degrees[g] > remaining) continue;
      chosen.push_back(g);
      rec(g, remaining - degrees[g]);
      chosen.pop_back();
    }
  };
  rec(0, target);
}

void tensor_products(const std::vector<MultiTensor>& gens, const std::vector<std::size_t>& chosen,
                     const std::vector<Variance>& target, std::size_t dim,
                     const std::function<void(const SparseVec&)>& emit) {
  const std::size_t slots = target.size();
  std::vector<bool> used(slots, false);
  // placement[f][s] = target slot receiving slot s of factor f.
  std::vector<std::vector<std::size_t>> placement(chosen.size());
  std::vector<std::size_t> stride(slots, 1);
  for (std::size_t j = slots; j-- > 1;) stride[j - 1] = stride[j] * dim;

  auto build = [&]() {
    SparseVec acc{{0, Rational(1)}};
    for (std::size_t f = 0; f < chosen.size(); ++f) {
      SparseVec next;
      for (const auto& [pos, a] : acc) {
        for (const auto& [idx, c] : gens[chosen[f]].terms()) {
          std::size_t p = pos;
          for (std::size_t s = 0; s < idx.size(); ++s) p += idx[s] * stride[placement[f][s]];
          add_entry(next, p, a * c.a());
        }
      }
      acc = std::move(next);
    }
    emit(acc);
  };

  std::function<void(std::size_t, std::size_t)> place = [&](std::size_t f, std::size_t s) {
    if (f == chosen.size()) {
      build();
      return;
    }
    const MultiTensor& g = gens[chosen[f]];
    if (s == g.degree()) {
      place(f + 1, 0);
      return;
    }
    for (std::size_t t = 0; t < slots; ++t) {
      if (used[t] || target[t] != g.variance(s)) continue;
      used[t] = true;
      placement[f].push_back(t);
      place(f, s + 1);
      placement[f].pop_back();
      used[t] = false;
    }
  };
  place(0, 0);
}

}  // namespace

CoverageReport generator_coverage(const LieRep& rep, const std::vector<Generator>& generators,
                                  std::optional<std::size_t> max_factors) {
  CoverageReport report;
  const auto invariants = invariant_basis(rep);
  report.invariant_dim = invariants.size();
  SparseEchelon inv_span;
  for (const auto& v : invariants) inv_span.insert(v);

  const std::size_t degree = carrier_degree(rep.carrier);
  const std::size_t cap = max_factors.value_or(degree);
  SparseEchelon span;
  bool contained = true;
  auto emit = [&](const SparseVec& v) {
    ++report.products;
    if (v.empty()) return;
    if (!inv_span.contains(v)) contained = false;
    span.insert(v);
  };

  std::vector<std::size_t> degrees;
  for (const auto& g : generators) degrees.push_back(generator_degree(g));

  if (auto slots = tensor_slots(rep.carrier)) {
    std::vector<MultiTensor> gens;
    for (const auto& g : generators) {
      const auto* t = std::get_if<MultiTensor>(&g);
      if (!t) throw DomainError("tensor-type carriers need tensor generators");
      if (t->dim() != rep.base_dim) throw DomainError("generator dimension does not match the base");
      for (const auto& [idx, c] : t->terms())
        if (!c.is_rational()) throw DomainError("generators must have rational coefficients");
      gens.push_back(*t);
    }
    for_each_multiset(degrees, slots->size(), cap, [&](const std::vector<std::size_t>& chosen) {
      tensor_products(gens, chosen, *slots, rep.base_dim, emit);
    });
  } else if (rep.carrier.kind == CarrierExpr::Kind::Wedge) {
    const std::size_t base = *carrier_dim(rep.carrier.children[0], rep.base_dim);
    std::vector<WedgeElement> gens;
    for (const auto& g : generators) {
      const auto* w = std::get_if<WedgeElement>(&g);
      if (!w) throw DomainError("wedge carriers need wedge generators");
      if (w->dim() != base) throw DomainError("generator dimension does not match the base carrier");
      gens.push_back(*w);
    }
    for_each_multiset(degrees, rep.carrier.k, cap, [&](const std::vector<std::size_t>& chosen) {
      WedgeElement acc = gens[chosen[0]];
      for (std::size_t f = 1; f < chosen.size(); ++f) acc = wedge(acc, gens[chosen[f]]);
      emit(wedge_to_carrier(acc));
    });
  } else {
    throw DomainError("generator_coverage supports tensor-type and wedge carriers only");
  }
  report.span_dim = span.rank();
  report.contained = contained;
  report.equal = contained && report.span_dim == report.invariant_dim;
  return report;
}

MultiTensor contraction_tensor(std::size_t dim) {
  MultiTensor t(dim, std::vector<Variance>{Variance::Std, Variance::Dual});
  for (std::size_t i = 0; i < dim; ++i) t.add({i, i}, 1);
  return t;
}

MultiTensor form_tensor(const QMatrix& form) {
  auto inv = inverse(form);
  if (!inv) throw DegenerateError("form_tensor: form is degenerate");
  MultiTensor t(form.rows(), std::vector<Variance>{Variance::Std, Variance::Std});
  for (std::size_t i = 0; i < form.rows(); ++i)
    for (std::size_t j = 0; j < form.cols(); ++j) t.add({i, j}, QuadNumber((*inv)(i, j)));
  return t;
}

std::vector<WedgeElement> weil_generators(std::size_t dim_w, std::size_t copies) {
  if (dim_w == 0 || copies == 0) throw DomainError("weil_generators needs positive sizes");
  const std::size_t block = 2 * dim_w;
  const std::size_t base = block * copies;
  std::vector<WedgeElement> out;
  for (std::size_t a = 0; a < copies; ++a)
    for (std::size_t b = 0; b < copies; ++b) {
      WedgeElement c(base, 2);
      for (std::size_t i = 0; i < dim_w; ++i) c.add({a * block + i, b * block + dim_w + i}, 1);
      out.push_back(std::move(c));
    }
  Index all(dim_w);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const WedgeElement det = WedgeElement::basis(dim_w, all);
  std::vector<Partition> compositions;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
    if (parts.size() + 1 == copies) {
      parts.push_back(remaining);
      compositions.push_back({parts});
      parts.pop_back();
      return;
    }
    for (std::size_t p = remaining + 1; p-- > 0;) {
      parts.push_back(p);
      rec(remaining - p);
      parts.pop_back();
    }
  };
  rec(dim_w);
  for (std::size_t offset : {std::size_t{0}, dim_w}) {
    for (const auto& part : compositions) {
      WedgeElement copies_wedge = realization_embed(det, part).to_copies_wedge();
      WedgeElement placed(base, dim_w);
      for (const auto& [idx, c] : copies_wedge.terms()) {
        Index moved(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) moved[j] = (idx[j] / dim_w) * block + offset + idx[j] % dim_w;
        placed.add(moved, c);
      }
      out.push_back(std::move(placed));
    }
  }
  return out;
}

namespace {

using ElementSet = std::uint64_t;

ElementSet span_with(ElementSet s, std::uint32_t v, std::size_t m) {
  ElementSet out = s;
  for (std::uint32_t x = 0; x < (1U << m); ++x)
    if ((s >> x) & 1U) out |= ElementSet{1} << (x ^ v);
  return out;
}

std::uint32_t permute_mask(std::uint32_t x, const std::vector<std::size_t>& perm) {
  std::uint32_t y = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if ((x >> i) & 1U) y |= 1U << perm[i];
  return y;
}

}  // namespace

std::vector<F2Subspace> galois_stable_subgroups(std::size_t m,
                                                const std::vector<std::vector<std::size_t>>& perms) {
  if (m == 0 || m > 6) throw DomainError("galois_stable_subgroups supports 1 <= m <= 6");
  for (const auto& p : perms) {
    if (p.size() != m) throw DomainError("permutation length does not match m");
    std::vector<bool> seen(m, false);
    for (auto v : p) {
      if (v >= m || seen[v]) throw DomainError("not a permutation of 1..m");
      seen[v] = true;
    }
  }
  std::set<ElementSet> all{ElementSet{1}};
  std::vector<ElementSet> frontier{ElementSet{1}};
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (ElementSet s : frontier)
      for (std::uint32_t v = 1; v < (1U << m); ++v) {
        if ((s >> v) & 1U) continue;
        ElementSet t = span_with(s, v, m);
        if (all.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  std::vector<F2Subspace> out;
  for (ElementSet s : all) {
    bool stable = true;
    for (const auto& p : perms) {
      for (std::uint32_t x = 0; x < (1U << m) && stable; ++x)
        if (((s >> x) & 1U) && !((s >> permute_mask(x, p)) & 1U)) stable = false;
    }
    if (!stable) continue;
    F2Subspace elems;
    for (std::uint32_t x = 0; x < (1U << m); ++x)
      if ((s >> x) & 1U) elems.push_back(x);
    out.push_back(std::move(elems));
  }
  std::sort(out.begin(), out.end(), [](const F2Subspace& a, const F2Subspace& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::uint32_t> f2_basis(const F2Subspace& s) {
  std::vector<std::uint32_t> rows;
  for (std::uint32_t x : s) {
    std::uint32_t v = x;
    for (std::uint32_t r : rows) {
      const std::uint32_t lead = 1U << (31 - std::countl_zero(r));
      if (v & lead) v ^= r;
    }
    if (v == 0) continue;
    const std::uint32_t lead = 1U << (31 - std::countl_zero(v));
    for (auto& r : rows)
      if (r & lead) r ^= v;
    rows.push_back(v);
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

}  // namespace hodgelab
