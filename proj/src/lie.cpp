#include "hodgelab/lie.hpp"

namespace hodgelab {

namespace {

QMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  QMatrix e(n, n);
  e(i, j) = 1;
  return e;
}

}  // namespace

LieAlgebra lie_gl(std::size_t n) {
  LieAlgebra out{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.basis.push_back(unit(n, i, j));
  return out;
}

LieAlgebra lie_sl(std::size_t n) {
  if (n == 0) throw DomainError("sl(0) is not defined");
  LieAlgebra out{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) out.basis.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.basis.push_back(unit(n, i, j));
  return out;
}

LieAlgebra lie_so(const QMatrix& gram) {
  if (!gram.is_symmetric()) throw DomainError("so: Gram matrix must be symmetric");
  auto ginv = inverse(gram);
  if (!ginv) throw DegenerateError("so: Gram matrix is degenerate");
  const std::size_t n = gram.rows();
  LieAlgebra out{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.basis.push_back(*ginv * (unit(n, i, j) - unit(n, j, i)));
  return out;
}

QMatrix standard_symplectic(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw DomainError("symplectic form needs a positive even dimension");
  const std::size_t h = n / 2;
  QMatrix omega(n, n);
  for (std::size_t i = 0; i < h; ++i) {
    omega(i, h + i) = 1;
    omega(h + i, i) = -1;
  }
  return omega;
}

LieAlgebra lie_sp(std::size_t n) {
  QMatrix omega = standard_symplectic(n);
  QMatrix omega_inv = *inverse(omega);
  LieAlgebra out{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      QMatrix s = unit(n, i, j);
      if (i != j) s += unit(n, j, i);
      out.basis.push_back(omega_inv * s);
    }
  return out;
}

LieAlgebra lie_from_constraints(std::size_t n,
                                const std::vector<std::function<QMatrix(const QMatrix&)>>& constraints) {
  // Constraint matrices are linear in g, so their columns over the unit basis give the system.
  std::size_t rows = 0;
  std::vector<std::vector<QMatrix>> per_unit(n * n);
  for (std::size_t u = 0; u < n * n; ++u) {
    QMatrix e = unit(n, u / n, u % n);
    for (const auto& c : constraints) per_unit[u].push_back(c(e));
  }
  for (const auto& m : per_unit.empty() ? std::vector<QMatrix>{} : per_unit[0]) rows += m.rows() * m.cols();
  QMatrix system(rows, n * n);
  for (std::size_t u = 0; u < n * n; ++u) {
    std::size_t r = 0;
    for (const auto& m : per_unit[u])
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) system(r++, u) = m(i, j);
  }
  LieAlgebra out{n, {}};
  for (const auto& v : kernel_basis(system)) {
    QMatrix g(n, n);
    for (std::size_t u = 0; u < n * n; ++u) g(u / n, u % n) = v[u];
    out.basis.push_back(std::move(g));
  }
  return out;
}

namespace {

QMatrix trace_as_matrix(const QMatrix& g) {
  QMatrix t(1, 1);
  for (std::size_t i = 0; i < g.rows(); ++i) t(0, 0) += g(i, i);
  return t;
}

void require_size(const QMatrix& form, const EStructure& s) {
  if (form.rows() != s.space_dim() || form.cols() != s.space_dim()) {
    throw DomainError("form dimension does not match the E-structure");
  }
}

}  // namespace

LieAlgebra lie_su(const EStructure& s, const QMatrix& H) {
  require_size(H, s);
  weil_hermitian(H, s);
  if (is_zero(determinant(H))) throw DegenerateError("su: H is degenerate");
  const QMatrix J = s.J();
  return lie_from_constraints(s.space_dim(), {
      [J](const QMatrix& g) { return g * J - J * g; },
      [H](const QMatrix& g) { return g.transpose() * H + H * g; },
      [](const QMatrix& g) { return trace_as_matrix(g); },
      [J](const QMatrix& g) { return trace_as_matrix(J * g); },
  });
}

LieAlgebra lie_res_so(const EStructure& s, const QMatrix& psi) {
  if (s.d() < 0) throw DomainError("res-so expects a real quadratic field");
  trace_descend(psi, s, false);
  const QMatrix J = s.J();
  return lie_from_constraints(s.space_dim(), {
      [J](const QMatrix& g) { return g * J - J * g; },
      [psi](const QMatrix& g) { return g.transpose() * psi + psi * g; },
  });
}

LieAlgebra lie_u(const EStructure& s, const QMatrix& psi) {
  if (s.d() > 0) throw DomainError("u expects an imaginary quadratic field");
  trace_descend(psi, s, true);
  const QMatrix J = s.J();
  return lie_from_constraints(s.space_dim(), {
      [J](const QMatrix& g) { return g * J - J * g; },
      [psi](const QMatrix& g) { return g.transpose() * psi + psi * g; },
  });
}

bool is_bracket_closed(const LieAlgebra& lie) {
  const std::size_t n = lie.n;
  const std::size_t m = lie.basis.size();
  auto flatten = [n](const QMatrix& g) {
    QVector v(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = g(i, j);
    return v;
  };
  std::vector<QVector> rows;
  for (const auto& b : lie.basis) rows.push_back(flatten(b));
  if (rows.empty()) return true;
  const std::size_t r0 = rank(QMatrix::from_rows(rows));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const QMatrix& x = lie.basis[a];
      const QMatrix& y = lie.basis[b];
      rows.push_back(flatten(x * y - y * x));
    }
  return rank(QMatrix::from_rows(rows)) == r0;
}

QMatrix reflection(const QMatrix& gram, const QVector& v) {
  QuadraticSpace space(gram);
  const Rational qv = space.pair(v, v);
  if (is_zero(qv)) throw DomainError("reflection: vector is isotropic");
  const std::size_t n = gram.rows();
  QMatrix r = QMatrix::identity(n);
  // Column j is the image of e_j.
  for (std::size_t j = 0; j < n; ++j) {
    QVector e(n, Rational(0));
    e[j] = 1;
    const Rational c = 2 * space.pair(e, v) / qv;
    for (std::size_t i = 0; i < n; ++i) r(i, j) -= c * v[i];
  }
  return r;
}

}  // namespace hodgelab
