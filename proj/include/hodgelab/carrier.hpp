#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgelab/matrix.hpp"
#include "hodgelab/sparse.hpp"
#include "hodgelab/tensor.hpp"

namespace hodgelab {

/// Representation built from the base space: std, dual, sums, powers, exterior and tensor
/// powers, and tensor products of carriers (prod).
struct CarrierExpr {
  enum class Kind { Std, Dual, Sum, Pow, Wedge, Tensor, Prod };

  Kind kind = Kind::Std;
  std::size_t k = 0;
  std::vector<CarrierExpr> children;

  static CarrierExpr std_rep() { return {Kind::Std, 0, {}}; }
  static CarrierExpr dual() { return {Kind::Dual, 0, {}}; }
  static CarrierExpr sum(std::vector<CarrierExpr> parts) { return {Kind::Sum, 0, std::move(parts)}; }
  static CarrierExpr pow(CarrierExpr c, std::size_t k) { return {Kind::Pow, k, {std::move(c)}}; }
  static CarrierExpr wedge(std::size_t k, CarrierExpr c) { return {Kind::Wedge, k, {std::move(c)}}; }
  static CarrierExpr tensor(std::size_t k, CarrierExpr c) { return {Kind::Tensor, k, {std::move(c)}}; }
  static CarrierExpr prod(std::vector<CarrierExpr> parts) { return {Kind::Prod, 0, std::move(parts)}; }

  friend bool operator==(const CarrierExpr&, const CarrierExpr&) = default;
};

std::string to_string(const CarrierExpr& c);

/// Dimension over a base of dimension n; nullopt when it exceeds `cap`.
std::optional<std::size_t> carrier_dim(const CarrierExpr& c, std::size_t n,
                                       std::size_t cap = static_cast<std::size_t>(-1));

/// Number of base-space slots in one basis element of the carrier.
std::size_t carrier_degree(const CarrierExpr& c);

/// Slot variances when the carrier is a tensor product of std and dual factors.
std::optional<std::vector<Variance>> tensor_slots(const CarrierExpr& c);

enum class ActionMode { Derivation, Group };

/// Matrix of the induced action of x (an endomorphism of the base) on the carrier basis.
/// Basis order: tensor and prod use lexicographic tuples, wedge uses lexicographic increasing
/// tuples, sum and pow concatenate.
SparseCols carrier_action(const CarrierExpr& c, const QMatrix& x, ActionMode mode);

/// Dense form of carrier_action, for small carriers.
QMatrix carrier_action_dense(const CarrierExpr& c, const QMatrix& x, ActionMode mode);

/// Position of an increasing tuple among the increasing k-tuples of {0..n-1} in lex order.
std::size_t combination_rank(const Index& sorted, std::size_t n);

/// Coordinates of a tensor (rational coefficients) on a tensor-type carrier.
SparseVec tensor_to_carrier(const MultiTensor& t);
MultiTensor carrier_to_tensor(const SparseVec& v, std::size_t base_dim, std::size_t degree);

/// Coordinates of a wedge element (rational coefficients) on wedge(k, B), B of dimension w.dim().
SparseVec wedge_to_carrier(const WedgeElement& w);

}  // namespace hodgelab
