#pragma once

#include <functional>
#include <vector>

#include "hodgelab/descent.hpp"
#include "hodgelab/matrix.hpp"

namespace hodgelab {

/// Q-basis of a Lie subalgebra of gl(n), listed as matrices.
struct LieAlgebra {
  std::size_t n = 0;
  std::vector<QMatrix> basis;
};

LieAlgebra lie_gl(std::size_t n);
LieAlgebra lie_sl(std::size_t n);
/// {g : g^T G + G g = 0} for symmetric nondegenerate G.
LieAlgebra lie_so(const QMatrix& gram);
/// Standard symplectic form [[0, I], [-I, 0]] on Q^n, n even.
LieAlgebra lie_sp(std::size_t n);
QMatrix standard_symplectic(std::size_t n);

/// {g : gJ = Jg, g^T H + H g = 0, tr g = 0, tr(Jg) = 0}: the special unitary algebra of the
/// Hermitian form attached to H (d < 0, H alternating with J^T H = -H J).
LieAlgebra lie_su(const EStructure& s, const QMatrix& H);
/// {g : gJ = Jg, g^T psi + psi g = 0}: restriction of scalars of so(phi) for the trace-descent
/// phi of a symmetric compatible psi (d > 0).
LieAlgebra lie_res_so(const EStructure& s, const QMatrix& psi);
/// Same system for a Hermitian-compatible symmetric psi (d < 0): the unitary algebra u(phi).
LieAlgebra lie_u(const EStructure& s, const QMatrix& psi);

/// Solutions of a linear system in the entries of g; each constraint maps g to a matrix that
/// must vanish.
LieAlgebra lie_from_constraints(std::size_t n, const std::vector<std::function<QMatrix(const QMatrix&)>>& constraints);

bool is_bracket_closed(const LieAlgebra& lie);

/// Reflection x -> x - 2 psi(x, v) / psi(v, v) v for anisotropic v.
QMatrix reflection(const QMatrix& gram, const QVector& v);

}  // namespace hodgelab
