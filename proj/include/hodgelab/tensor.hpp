#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hodgelab/io.hpp"
#include "hodgelab/matrix.hpp"

namespace hodgelab {

using Index = std::vector<std::size_t>;

enum class Variance { Std, Dual };

/// Sparse element of V^{(x)k}; slots may carry a variance tag (default: all Std).
class MultiTensor {
 public:
  using Terms = std::map<Index, QuadNumber>;

  MultiTensor(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}
  MultiTensor(std::size_t dim, std::vector<Variance> variance)
      : dim_(dim), degree_(variance.size()), variance_(std::move(variance)) {}

  static MultiTensor basis(std::size_t dim, const Index& idx, QuadNumber coeff = 1);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  Variance variance(std::size_t slot) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Accumulates c into idx; zero results are erased.
  void add(const Index& idx, const QuadNumber& c);
  QuadNumber coeff(const Index& idx) const;

  MultiTensor& operator+=(const MultiTensor& o);
  MultiTensor& operator-=(const MultiTensor& o);
  MultiTensor& operator*=(const QuadNumber& s);
  friend MultiTensor operator+(MultiTensor a, const MultiTensor& b) { return a += b; }
  friend MultiTensor operator-(MultiTensor a, const MultiTensor& b) { return a -= b; }
  friend MultiTensor operator*(const QuadNumber& s, MultiTensor a) { return a *= s; }
  friend bool operator==(const MultiTensor& a, const MultiTensor& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// New slot j holds old slot perm[j].
  MultiTensor permute_slots(const std::vector<std::size_t>& perm) const;

 private:
  void require_compatible(const MultiTensor& o) const;

  std::size_t dim_;
  std::size_t degree_;
  std::vector<Variance> variance_;
  Terms terms_;
};

MultiTensor tensor_product(const MultiTensor& a, const MultiTensor& b);

/// Sparse element of the k-th exterior power; keys are strictly increasing.
class WedgeElement {
 public:
  using Terms = std::map<Index, QuadNumber>;

  WedgeElement(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

  /// e_{idx[0]} ^ ... ^ e_{idx[k-1]} for an arbitrary (not necessarily sorted) index list.
  static WedgeElement basis(std::size_t dim, const Index& idx, QuadNumber coeff = 1);
  /// Degree-1 element with the given coordinates.
  static WedgeElement vector(const ExactVector& v);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * e_idx after sorting idx; repeated indices contribute nothing.
  void add(const Index& idx, const QuadNumber& c);
  QuadNumber coeff(const Index& sorted_idx) const;

  WedgeElement& operator+=(const WedgeElement& o);
  WedgeElement& operator-=(const WedgeElement& o);
  WedgeElement& operator*=(const QuadNumber& s);
  friend WedgeElement operator+(WedgeElement a, const WedgeElement& b) { return a += b; }
  friend WedgeElement operator-(WedgeElement a, const WedgeElement& b) { return a -= b; }
  friend WedgeElement operator*(const QuadNumber& s, WedgeElement a) { return a *= s; }
  friend bool operator==(const WedgeElement& a, const WedgeElement& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const WedgeElement& o) const;

  std::size_t dim_;
  std::size_t degree_;
  Terms terms_;
};

WedgeElement wedge(const WedgeElement& a, const WedgeElement& b);

/// Sign of the permutation sorting `idx`, or 0 when an entry repeats. Sorts in place.
int sort_with_sign(Index& idx);

struct Partition {
  std::vector<std::size_t> parts;
  std::size_t total() const;
};

/// Element of (x)_j wedge^{I_j}(V). Keys are the concatenation of the increasing blocks.
class RealizationElement {
 public:
  RealizationElement(std::size_t dim, Partition partition)
      : dim_(dim), partition_(std::move(partition)) {}

  std::size_t dim() const { return dim_; }
  const Partition& partition() const { return partition_; }
  const std::map<Index, QuadNumber>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  void add(const Index& concatenated, const QuadNumber& c);

  /// Blockwise alternation embedding into V^{(x)m}.
  MultiTensor to_tensor() const;
  /// Block j placed in the j-th copy of V^{+k}: index i of block j becomes j*dim + i.
  WedgeElement to_copies_wedge() const;

 private:
  std::size_t dim_;
  Partition partition_;
  std::map<Index, QuadNumber> terms_;
};

/// e_{i1}^...^e_{ik} -> sum_sigma sgn(sigma) e_{i_sigma(1)} (x) ... (x) e_{i_sigma(k)}.
MultiTensor wedge_to_tensor(const WedgeElement& w);

/// Sum over ordered set partitions of the wedge factors (shuffle signs).
RealizationElement realization_embed(const WedgeElement& w, const Partition& partition);

/// Pullback along v -> (v, ..., v) into V^{+copies}.
WedgeElement diag_pullback(const WedgeElement& w, std::size_t copies);

/// Copy p of the |J|-fold sum is placed at copy J[p] (0-based, strictly increasing) of the
/// `total`-fold sum. The base dimension is w.dim() / |J|.
WedgeElement proj_pullback(const WedgeElement& w, const std::vector<std::size_t>& J,
                           std::size_t total);

/// Tensor slot j is sent to copy j: e_{a1} (x) ... (x) e_{ak} -> p_1^* e_{a1} ^ ... ^ p_k^* e_{ak}.
WedgeElement tensor_to_copies_wedge(const MultiTensor& t);

/// Contraction of `slot` against y through the Gram pairing: coefficient psi(e_a, y).
MultiTensor contract_slot(const MultiTensor& t, std::size_t slot, const ExactVector& y,
                          const QMatrix& gram);

/// Sign-alternation under all transpositions inside the consecutive slot blocks given by
/// `first` followed by `second`.
bool is_alternating(const MultiTensor& t, const Partition& first, const Partition& second = {});

/// lambda with a = lambda * b, when it exists and b is nonzero.
std::optional<QuadNumber> proportionality(const MultiTensor& a, const MultiTensor& b);

Json tensor_to_json(const MultiTensor& t);
MultiTensor tensor_from_json(const Json& j, FieldSpec field = {});
Json wedge_to_json(const WedgeElement& w);

}  // namespace hodgelab
