#pragma once

#include <utility>
#include <vector>

#include "hodgelab/io.hpp"
#include "hodgelab/tensor.hpp"

namespace hodgelab {

/// Action of E = Q(sqrt d) on Q^{2r}: sqrt d acts as J with J^2 = d I.
class EStructure {
 public:
  EStructure(FieldSpec field, QMatrix J);

  FieldSpec field() const { return field_; }
  std::int64_t d() const { return field_.d; }
  const QMatrix& J() const { return J_; }
  std::size_t space_dim() const { return J_.rows(); }
  std::size_t e_dim() const { return J_.rows() / 2; }

  /// E-basis b_1..b_r picked greedily from the standard basis.
  const std::vector<QVector>& e_basis() const { return e_basis_; }
  /// Q-basis b_1, J b_1, ..., b_r, J b_r as matrix columns.
  const QMatrix& q_basis() const { return q_basis_; }

  /// E-coordinates of a rational vector with respect to e_basis().
  ExactVector e_coordinates(const QVector& x) const;

 private:
  FieldSpec field_;
  QMatrix J_;
  std::vector<QVector> e_basis_;
  QMatrix q_basis_;
  QMatrix q_basis_inverse_;
};

EStructure structure_from_json(const Json& j);
Json structure_to_json(const EStructure& s);

/// Gram matrix over E in the E-basis of the structure. When sesquilinear, the form is
/// conjugate-linear in its first argument and linear in its second.
struct EValuedForm {
  EStructure structure;
  ExactMatrix gram;
  bool sesquilinear = false;
  /// Dimension of the homogeneous solution space of the system that produced the form.
  std::size_t solution_space_dim = 0;

  QuadNumber evaluate(const QVector& x, const QVector& y) const;
  bool is_hermitian() const;
  bool is_symmetric() const;
};

/// J^T psi = psi J (bilinear) or J^T psi = -psi J (sesquilinear).
bool is_compatible(const QMatrix& psi, const EStructure& s, bool hermitian);

/// The E-valued form phi with Tr(phi) = psi, obtained by solving the defining linear system.
EValuedForm trace_descend(const QMatrix& psi, const EStructure& s, bool hermitian);

/// Bases of ker(J - sqrt d) and ker(J + sqrt d) in V (x) Q(sqrt d).
std::pair<std::vector<ExactVector>, std::vector<ExactVector>> eigenspace_decompose(const EStructure& s);

/// Q-basis of the image of wedge^r_E V in wedge^r_Q V, r = dim_E V: the images of
/// b_1 ^ ... ^ b_r and sqrt d * b_1 ^ ... ^ b_r under the trace-dual pairing.
std::vector<WedgeElement> wedge_E_embed(const EStructure& s);
/// Same image; psi is validated against the structure first.
std::vector<WedgeElement> wedge_E_embed(const EStructure& s, const QMatrix& psi, bool hermitian);

/// H~(x, y) = H(x, J y) + sqrt d H(x, y) for alternating H with J^T H = -H J and d < 0.
EValuedForm weil_hermitian(const QMatrix& H, const EStructure& s);

/// Weil classes in wedge^{2n}_Q V for V of Q-dimension 4n.
std::vector<WedgeElement> weil_classes(const EStructure& s, const QMatrix& H);

/// Wedge of a list of vectors (over Q(sqrt d)).
WedgeElement wedge_of(const std::vector<ExactVector>& vectors);

}  // namespace hodgelab
