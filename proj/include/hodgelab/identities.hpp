#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgelab/io.hpp"
#include "hodgelab/qspace.hpp"
#include "hodgelab/tensor.hpp"

namespace hodgelab {

/// sum_{i=i0}^{2n-1} (-1)^{i-1} C(2n - i0, i - i0).
Rational binom_unity(std::size_t n, std::size_t i0);

struct IdentityReport {
  std::string identity;
  Json params;
  bool pass = false;
  Rational scalar = 1;
  std::size_t cases = 0;
  Json counterexample;  // null when the identity holds
  Json to_json() const;
};

/// Diagonal pullback to m copies against the inclusion-exclusion over proper nonempty J plus
/// the slot-placed alternation, for every basis wedge of degree m on Q^dim_v.
IdentityReport verify_sum_identity(std::size_t dim_v, std::size_t m);

/// Sign (-1)^{m-|J|-1} used in the inclusion-exclusion; equals (-1)^{|J|-1} for even m.
int sum_identity_sign(std::size_t m, std::size_t j_size);

struct SpecializationInput {
  QuadraticSpace ambient;
  std::vector<QVector> sub_basis;         // basis of T, n - c vectors
  std::vector<QVector> complement_basis;  // c vectors
};

/// Checks det(ambient) = sum over c-subsets I of eps(I) (det T in the slots outside I) (x)
/// (det of the complement in the slots I), up to one rational scalar that is reported.
IdentityReport det_quotient_identity(const SpecializationInput& input);

struct SpecializationResult {
  MultiTensor tensor;                   // degree n - c
  std::optional<QuadNumber> ratio;      // tensor = ratio * wedge_to_tensor(det T)
  bool proportional_nonzero = false;
};

/// Contracts slot 0 of wedge_to_tensor(e_1 ^ ... ^ e_n) against x_1, ..., x_c in turn.
SpecializationResult specialize_det(const SpecializationInput& input, const std::vector<QVector>& x_list);

/// Alternation tensor of v_1 ^ ... ^ v_k.
MultiTensor det_tensor(const std::vector<QVector>& vectors, std::size_t dim);

}  // namespace hodgelab
