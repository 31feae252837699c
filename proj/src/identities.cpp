#include "hodgelab/identities.hpp"

#include <numeric>

namespace hodgelab {

Rational binom_unity(std::size_t n, std::size_t i0) {
  if (n == 0 || i0 < 1 || i0 > 2 * n - 1) throw DomainError("binom_unity requires 1 <= i0 <= 2n - 1");
  Rational sum = 0;
  const std::size_t top = 2 * n - i0;
  Integer c = 1;  // C(top, i - i0), built incrementally
  for (std::size_t i = i0; i <= 2 * n - 1; ++i) {
    const std::size_t k = i - i0;
    if (k > 0) {
      c *= static_cast<unsigned long>(top - k + 1);
      c /= static_cast<unsigned long>(k);
    }
    sum += (i % 2 == 1) ? Rational(c) : Rational(-c);
  }
  return sum;
}

Json IdentityReport::to_json() const {
  Json out;
  out["identity"] = identity;
  out["params"] = params;
  out["status"] = pass ? "pass" : "fail";
  out["scalar"] = to_string(scalar);
  out["cases"] = cases;
  if (!counterexample.is_null()) out["counterexample"] = counterexample;
  return out;
}

int sum_identity_sign(std::size_t m, std::size_t j_size) { return ((m - j_size - 1) % 2 == 0) ? 1 : -1; }

IdentityReport verify_sum_identity(std::size_t dim_v, std::size_t m) {
  if (m == 0 || m > dim_v || dim_v > 6) throw DomainError("verify_sum_identity requires 1 <= m <= dimV <= 6");
  IdentityReport report;
  report.identity = "sum-identity";
  report.params = Json{{"dimV", dim_v}, {"m", m}};
  report.pass = true;
  Index idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    const WedgeElement beta = WedgeElement::basis(dim_v, idx);
    WedgeElement diff = diag_pullback(beta, m);
    for (std::uint32_t mask = 1; mask + 1 < (1U << m); ++mask) {
      std::vector<std::size_t> J;
      for (std::size_t c = 0; c < m; ++c)
        if ((mask >> c) & 1U) J.push_back(c);
      WedgeElement term = proj_pullback(diag_pullback(beta, J.size()), J, m);
      diff -= QuadNumber(sum_identity_sign(m, J.size())) * term;
    }
    diff -= tensor_to_copies_wedge(wedge_to_tensor(beta));
    ++report.cases;
    if (!diff.is_zero() && report.pass) {
      report.pass = false;
      report.counterexample = Json{{"beta", idx}, {"difference", wedge_to_json(diff)}};
    }
    std::size_t j = m;
    while (j > 0 && idx[j - 1] == dim_v - m + j - 1) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t t = j; t < m; ++t) idx[t] = idx[t - 1] + 1;
  }
  return report;
}

MultiTensor det_tensor(const std::vector<QVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return MultiTensor::basis(dim, {}, 1);
  WedgeElement acc(dim, 0);
  acc.add({}, 1);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DomainError("vector dimension mismatch");
    acc = wedge(acc, WedgeElement::vector(to_exact(v)));
  }
  return wedge_to_tensor(acc);
}

namespace {

void validate(const SpecializationInput& in) {
  const std::size_t n = in.ambient.dim();
  if (in.sub_basis.size() + in.complement_basis.size() != n) {
    throw DomainError("sub_basis and complement_basis must together have ambient dimension");
  }
  std::vector<QVector> all = in.sub_basis;
  all.insert(all.end(), in.complement_basis.begin(), in.complement_basis.end());
  for (const auto& v : all)
    if (v.size() != n) throw DomainError("vector dimension mismatch");
  if (n > 0 && is_zero(determinant(QMatrix::from_columns(n, all)))) {
    throw DegenerateError("sub_basis and complement_basis do not span the ambient space");
  }
  if (!in.sub_basis.empty()) {
    QMatrix t = QMatrix::from_columns(n, in.sub_basis);
    if (is_zero(determinant(t.transpose() * in.ambient.gram() * t))) {
      throw DegenerateError("the form restricted to T is degenerate");
    }
  }
}

MultiTensor ambient_det(std::size_t n) {
  Index all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (n == 0) return MultiTensor::basis(0, {}, 1);
  return wedge_to_tensor(WedgeElement::basis(n, all));
}

}  // namespace

IdentityReport det_quotient_identity(const SpecializationInput& input) {
  validate(input);
  const std::size_t n = input.ambient.dim();
  const std::size_t c = input.complement_basis.size();
  IdentityReport report;
  report.identity = "det-quotient";
  report.params = Json{{"n", n}, {"c", c}};

  std::vector<QVector> all = input.sub_basis;
  all.insert(all.end(), input.complement_basis.begin(), input.complement_basis.end());
  const Rational delta = n == 0 ? Rational(1) : determinant(QMatrix::from_columns(n, all));

  const MultiTensor product =
      tensor_product(det_tensor(input.sub_basis, n), det_tensor(input.complement_basis, n));
  MultiTensor rhs(n, n);
  std::vector<std::size_t> in_subset(n, 0);
  std::fill(in_subset.end() - static_cast<std::ptrdiff_t>(c), in_subset.end(), 1);
  // Every c-subset I, enumerated as the 0/1 patterns in lexicographic order.
  do {
    std::vector<std::size_t> order;  // I^c ascending, then I ascending
    for (std::size_t p = 0; p < n; ++p)
      if (!in_subset[p]) order.push_back(p);
    for (std::size_t p = 0; p < n; ++p)
      if (in_subset[p]) order.push_back(p);
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[order[j]] = j;
    Index probe = order;
    const int eps = sort_with_sign(probe);
    rhs += QuadNumber(eps) * product.permute_slots(perm);
    ++report.cases;
  } while (std::next_permutation(in_subset.begin(), in_subset.end()));

  // det(T~/T) is represented by the complement wedge divided by delta.
  rhs *= QuadNumber(1 / delta);
  auto lambda = proportionality(rhs, ambient_det(n));
  report.params["delta"] = to_string(delta);
  if (lambda && lambda->is_rational()) {
    report.scalar = lambda->a();
    report.pass = (report.scalar == 1 || report.scalar == -1);
  } else {
    report.pass = false;
    report.scalar = 0;
    report.counterexample = tensor_to_json(rhs);
  }
  return report;
}

SpecializationResult specialize_det(const SpecializationInput& input, const std::vector<QVector>& x_list) {
  validate(input);
  const std::size_t n = input.ambient.dim();
  if (x_list.size() != input.complement_basis.size()) {
    throw DomainError("specialize_det needs exactly c vectors");
  }
  MultiTensor t = ambient_det(n);
  for (const auto& x : x_list) t = contract_slot(t, 0, to_exact(x), input.ambient.gram());
  SpecializationResult out{t, std::nullopt, false};
  const MultiTensor target = det_tensor(input.sub_basis, n);
  out.ratio = proportionality(t, target);
  out.proportional_nonzero = out.ratio.has_value() && !out.ratio->is_zero();
  return out;
}

}  // namespace hodgelab
