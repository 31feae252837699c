#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hodgelab/carrier.hpp"
#include "hodgelab/lie.hpp"

namespace hodgelab {

/// Lie algebra acting on a carrier, plus optional group elements (component representatives).
struct LieRep {
  std::size_t base_dim = 0;
  std::vector<QMatrix> basis;
  CarrierExpr carrier;
  std::vector<QMatrix> extra_group_elements;
};

/// Validates shapes and bracket closure.
LieRep make_rep(const LieAlgebra& lie, CarrierExpr carrier, std::vector<QMatrix> extra = {});

/// Worker count: HODGELAB_THREADS when set and positive, otherwise hardware concurrency.
std::size_t worker_count();

/// Canonical (reduced echelon) basis of the joint kernel of the derivation actions, intersected
/// with the fixed spaces of the extra group elements.
std::vector<SparseVec> invariant_basis(const LieRep& rep);

/// True when v is killed by every basis element and fixed by every extra element.
bool is_invariant(const LieRep& rep, const SparseVec& v);

/// One vector per sigma in S_s (lexicographic order) on prod(tensor(s,std), tensor(s,dual)):
/// dual slot i is paired with std slot sigma(i).
std::vector<SparseVec> complete_contractions(std::size_t s, std::size_t dim_w);

/// Generators of invariants: tensors with slot variances (for tensor-type carriers) or wedge
/// elements of the base carrier (for carriers wedge(m, B)).
using Generator = std::variant<MultiTensor, WedgeElement>;

struct CoverageReport {
  std::size_t invariant_dim = 0;
  std::size_t span_dim = 0;
  std::size_t products = 0;
  bool contained = false;  // every product is invariant
  bool equal = false;      // span of products equals the invariant space
};

/// Spans all products of generators (all slot placements, or wedge products) whose degrees add
/// up to the carrier degree, using at most `max_factors` factors (default: carrier degree).
CoverageReport generator_coverage(const LieRep& rep, const std::vector<Generator>& generators,
                                  std::optional<std::size_t> max_factors = std::nullopt);

/// sum_i e_i (x) e_i^* with variances (Std, Dual).
MultiTensor contraction_tensor(std::size_t dim);
/// The invariant (Std, Std) tensor of a nondegenerate bilinear form B: entries of B^{-1}.
MultiTensor form_tensor(const QMatrix& form);

/// Degree-2 contractions and realizations of det W and det W^* in wedge^D((W + W^*)^{+k}),
/// D = dim W. Base carrier layout: copy j occupies [2Dj, 2D(j+1)), standard part first.
std::vector<WedgeElement> weil_generators(std::size_t dim_w, std::size_t copies);

/// F_2-subspaces of F_2^m (m <= 6) stable under the given permutations (0-based one-line form).
/// Each subspace is returned as the bitmask set of its elements' masks.
using F2Subspace = std::vector<std::uint32_t>;
std::vector<F2Subspace> galois_stable_subgroups(std::size_t m,
                                                const std::vector<std::vector<std::size_t>>& perms);

/// Reduced echelon basis of a subspace given by its element masks.
std::vector<std::uint32_t> f2_basis(const F2Subspace& s);

}  // namespace hodgelab
