#include "hodgelab/descent.hpp"

#include <algorithm>
#include <numeric>

namespace hodgelab {

EStructure::EStructure(FieldSpec field, QMatrix J) : field_(field), J_(std::move(J)) {
  if (field_.is_rational()) throw DomainError("E-structure needs a quadratic field (d != 0)");
  field_ = FieldSpec::quadratic(field_.d);
  if (!J_.is_square()) throw DomainError("J must be square");
  const std::size_t n = J_.rows();
  if (n == 0 || n % 2 != 0) throw DomainError("E-structure needs an even, positive dimension");
  if (J_ * J_ != Rational(static_cast<long>(field_.d)) * QMatrix::identity(n)) {
    throw DomainError("J^2 != d * I");
  }
  std::vector<QVector> cols;
  for (std::size_t k = 0; k < n && cols.size() < n; ++k) {
    QVector e(n, Rational(0));
    e[k] = 1;
    std::vector<QVector> trial = cols;
    trial.push_back(e);
    if (rank(QMatrix::from_columns(n, trial)) == cols.size()) continue;
    e_basis_.push_back(e);
    cols.push_back(e);
    cols.push_back(J_ * e);
  }
  q_basis_ = QMatrix::from_columns(n, cols);
  auto inv = inverse(q_basis_);
  if (!inv) throw Error("E-structure: basis construction failed");
  q_basis_inverse_ = *inv;
}

ExactVector EStructure::e_coordinates(const QVector& x) const {
  if (x.size() != space_dim()) throw DomainError("vector dimension mismatch");
  QVector c = q_basis_inverse_ * x;
  ExactVector z;
  for (std::size_t i = 0; i < e_dim(); ++i) z.emplace_back(c[2 * i], c[2 * i + 1], field_);
  return z;
}

EStructure structure_from_json(const Json& j) {
  return EStructure(FieldSpec::quadratic(j.at("d").get<std::int64_t>()), matrix_from_json(j.at("J")));
}

Json structure_to_json(const EStructure& s) {
  Json out;
  out["d"] = s.d();
  out["J"] = matrix_to_json(s.J());
  return out;
}

QuadNumber EValuedForm::evaluate(const QVector& x, const QVector& y) const {
  ExactVector zx = structure.e_coordinates(x);
  ExactVector zy = structure.e_coordinates(y);
  QuadNumber s(Rational(0), Rational(0), structure.field());
  for (std::size_t i = 0; i < zx.size(); ++i) {
    QuadNumber left = sesquilinear ? zx[i].conj() : zx[i];
    for (std::size_t j = 0; j < zy.size(); ++j) s += left * gram(i, j) * zy[j];
  }
  return s;
}

bool EValuedForm::is_hermitian() const {
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (gram(j, i) != gram(i, j).conj()) return false;
  return true;
}

bool EValuedForm::is_symmetric() const { return gram.is_symmetric(); }

bool is_compatible(const QMatrix& psi, const EStructure& s, bool hermitian) {
  QMatrix lhs = s.J().transpose() * psi;
  QMatrix rhs = psi * s.J();
  return hermitian ? lhs == -rhs : lhs == rhs;
}

namespace {

void validate_form(const QMatrix& psi, const EStructure& s, bool hermitian) {
  if (psi.rows() != s.space_dim() || psi.cols() != s.space_dim()) {
    throw DomainError("form dimension does not match the E-structure");
  }
  if (!psi.is_symmetric()) throw DomainError("psi must be symmetric");
  if (is_zero(determinant(psi))) throw DegenerateError("psi is degenerate");
  if (!is_compatible(psi, s, hermitian)) {
    throw IncompatibleError(hermitian ? "psi(Jx, y) != -psi(x, Jy)" : "psi(Jx, y) != psi(x, Jy)");
  }
}

}  // namespace

EValuedForm trace_descend(const QMatrix& psi, const EStructure& s, bool hermitian) {
  validate_form(psi, s, hermitian);
  const std::size_t r = s.e_dim();
  const Rational d(static_cast<long>(s.d()));
  // Unknowns A_ij, B_ij with phi(b_i, b_j) = A_ij + B_ij sqrt d, laid out as (i, j, part).
  auto unknown = [r](std::size_t i, std::size_t j, std::size_t part) { return (i * r + j) * 2 + part; };
  const std::size_t unknowns = 2 * r * r;
  QMatrix system(4 * r * r, unknowns);
  QVector rhs(4 * r * r, Rational(0));
  const QMatrix& basis = s.q_basis();
  const QMatrix psi_basis = basis.transpose() * psi * basis;
  std::size_t row = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (int alpha = 0; alpha < 2; ++alpha) {
        for (int beta = 0; beta < 2; ++beta) {
          // phi(J^alpha b_i, J^beta b_j) = c * sqrt(d)^k * phi(b_i, b_j); its trace is linear in A, B.
          const int k = alpha + beta;
          const int c = (hermitian && alpha == 1) ? -1 : 1;
          if (k == 0) {
            system(row, unknown(i, j, 0)) = 2;
          } else if (k == 1) {
            system(row, unknown(i, j, 1)) = 2 * c * d;
          } else {
            system(row, unknown(i, j, 0)) = 2 * c * d;
          }
          rhs[row] = psi_basis(2 * i + static_cast<std::size_t>(alpha), 2 * j + static_cast<std::size_t>(beta));
          ++row;
        }
      }
    }
  }
  auto sol = solve(system, rhs);
  if (!sol) throw IncompatibleError("trace_descend: the defining system is inconsistent");
  EValuedForm out{s, ExactMatrix(r, r), hermitian, kernel_basis(system).size()};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      out.gram(i, j) = QuadNumber((*sol)[unknown(i, j, 0)], (*sol)[unknown(i, j, 1)], s.field());
  return out;
}

std::pair<std::vector<ExactVector>, std::vector<ExactVector>> eigenspace_decompose(const EStructure& s) {
  const std::size_t n = s.space_dim();
  const QuadNumber half(Rational(1, 2));
  // J / sqrt d = J sqrt d / d.
  const QuadNumber scale(Rational(0), Rational(1) / Rational(static_cast<long>(s.d())), s.field());
  ExactMatrix j_over_root = to_exact(s.J()) * scale;
  ExactMatrix id = ExactMatrix::identity(n);
  ExactMatrix plus = (id + j_over_root) * half;
  ExactMatrix minus = (id - j_over_root) * half;
  return {column_space_basis(plus), column_space_basis(minus)};
}

WedgeElement wedge_of(const std::vector<ExactVector>& vectors) {
  if (vectors.empty()) throw DomainError("wedge_of: empty list");
  WedgeElement acc = WedgeElement::vector(vectors.front());
  for (std::size_t k = 1; k < vectors.size(); ++k) acc = wedge(acc, WedgeElement::vector(vectors[k]));
  return acc;
}

namespace {

// Image of w_1 ^_E ... ^_E w_r: the coefficient of e_I is Tr(det[eps'_{I_a}(w_b)]) where eps'_i
// is the E-linear functional with trace eps_i (the i-th coordinate functional).
WedgeElement embed_e_wedge(const EStructure& s, const std::vector<QVector>& ws) {
  const std::size_t n = s.space_dim();
  const std::size_t r = ws.size();
  const Rational two_d = 2 * Rational(static_cast<long>(s.d()));
  // lifted(i, b) = eps'_i(w_b).
  ExactMatrix lifted(n, r);
  for (std::size_t b = 0; b < r; ++b) {
    QVector jw = s.J() * ws[b];
    for (std::size_t i = 0; i < n; ++i)
      lifted(i, b) = QuadNumber(ws[b][i] / 2, jw[i] / two_d, s.field());
  }
  WedgeElement out(n, r);
  Index idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    ExactMatrix minor(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) minor(a, b) = lifted(idx[a], b);
    out.add(idx, QuadNumber(field_trace_norm(determinant(minor), s.field()).first));
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t t = k; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<WedgeElement> wedge_E_embed(const EStructure& s) {
  std::vector<QVector> ws = s.e_basis();
  WedgeElement first = embed_e_wedge(s, ws);
  ws[0] = s.J() * ws[0];
  WedgeElement second = embed_e_wedge(s, ws);
  return {first, second};
}

std::vector<WedgeElement> wedge_E_embed(const EStructure& s, const QMatrix& psi, bool hermitian) {
  validate_form(psi, s, hermitian);
  return wedge_E_embed(s);
}

EValuedForm weil_hermitian(const QMatrix& H, const EStructure& s) {
  if (s.d() >= 0) throw DomainError("weil_hermitian requires an imaginary quadratic field");
  if (H.rows() != s.space_dim() || H.cols() != s.space_dim()) {
    throw DomainError("form dimension does not match the E-structure");
  }
  if (!H.is_alternating()) throw DomainError("H must be alternating");
  if (s.J().transpose() * H != -(H * s.J())) throw IncompatibleError("H(Jx, y) != -H(x, Jy)");
  const auto& b = s.e_basis();
  const std::size_t r = s.e_dim();
  auto bilinear = [&H](const QVector& x, const QVector& y) {
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * H(i, j) * y[j];
    return acc;
  };
  EValuedForm out{s, ExactMatrix(r, r), true, 0};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      out.gram(i, j) = QuadNumber(bilinear(b[i], s.J() * b[j]), bilinear(b[i], b[j]), s.field());
  return out;
}

std::vector<WedgeElement> weil_classes(const EStructure& s, const QMatrix& H) {
  if (s.space_dim() % 4 != 0) throw DomainError("weil_classes needs Q-dimension divisible by 4");
  weil_hermitian(H, s);
  return wedge_E_embed(s);
}

}  // namespace hodgelab
