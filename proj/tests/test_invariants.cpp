#include <cstdlib>
#include <set>

#include <gtest/gtest.h>

#include "hodgelab/cli.hpp"
#include "hodgelab/invariants.hpp"
#include "support.hpp"

using namespace hodgelab;
using namespace testing_support;

namespace {

// Dense joint kernel of the stacked action matrices, plus (g - I) for group elements.
std::size_t dense_invariant_dim(const LieRep& rep) {
  const std::size_t dim = *carrier_dim(rep.carrier, rep.base_dim);
  std::vector<QVector> rows;
  for (const auto& x : rep.basis) {
    QMatrix a = carrier_action_dense(rep.carrier, x, ActionMode::Derivation);
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(a.row(i));
  }
  for (const auto& g : rep.extra_group_elements) {
    QMatrix a = carrier_action_dense(rep.carrier, g, ActionMode::Group) - QMatrix::identity(dim);
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(a.row(i));
  }
  if (rows.empty()) return dim;
  return dim - rank(stack_rows(rows, dim));
}

QMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  QMatrix e(n, n);
  e(i, j) = 1;
  return e;
}

}  // namespace

TEST(Carrier, Dimensions) {
  EXPECT_EQ(*carrier_dim(parse_carrier("wedge(4,sum(std,dual))"), 4), 70u);
  EXPECT_EQ(*carrier_dim(parse_carrier("pow(sum(std,dual),2)"), 3), 12u);
  EXPECT_EQ(*carrier_dim(parse_carrier("prod(tensor(2,std),tensor(1,dual))"), 3), 27u);
  EXPECT_FALSE(carrier_dim(parse_carrier("tensor(8,std)"), 4, 3000).has_value());
}

TEST(CarrierAction, Examples) {
  QMatrix h = QMatrix::from_rows({{1, 0}, {0, -1}});
  EXPECT_TRUE(carrier_action_dense(CarrierExpr::wedge(2, CarrierExpr::std_rep()), h, ActionMode::Derivation).is_zero());
  EXPECT_EQ(carrier_action_dense(CarrierExpr::dual(), unit(2, 0, 1), ActionMode::Derivation), -unit(2, 1, 0));
  EXPECT_EQ(carrier_action_dense(CarrierExpr::tensor(2, CarrierExpr::std_rep()), QMatrix::identity(3), ActionMode::Group),
            QMatrix::identity(9));
}

TEST(CarrierActionProperty, GroupActionIsHomomorphism) {
  const CarrierExpr c = parse_carrier("prod(wedge(2,std),dual)");
  for (int trial = 0; trial < 10; ++trial) {
    QMatrix g = rand_invertible(3), h = rand_invertible(3);
    EXPECT_EQ(carrier_action_dense(c, g * h, ActionMode::Group),
              carrier_action_dense(c, g, ActionMode::Group) * carrier_action_dense(c, h, ActionMode::Group));
  }
}

TEST(CarrierActionProperty, DerivationIsBracketHomomorphism) {
  const CarrierExpr c = parse_carrier("wedge(2,sum(std,dual))");
  for (int trial = 0; trial < 10; ++trial) {
    QMatrix x = rand_matrix(3, 3), y = rand_matrix(3, 3);
    QMatrix ax = carrier_action_dense(c, x, ActionMode::Derivation);
    QMatrix ay = carrier_action_dense(c, y, ActionMode::Derivation);
    EXPECT_EQ(carrier_action_dense(c, x * y - y * x, ActionMode::Derivation), ax * ay - ay * ax);
  }
}

TEST(Lie, Dimensions) {
  EXPECT_EQ(lie_so(QMatrix::identity(3)).basis.size(), 3u);
  EXPECT_EQ(lie_sl(4).basis.size(), 15u);
  EXPECT_EQ(lie_sp(4).basis.size(), 10u);
  EXPECT_EQ(lie_gl(3).basis.size(), 9u);
  EXPECT_TRUE(is_bracket_closed(lie_so(rand_gram(4))));
}

TEST(Lie, SpecialUnitaryOverGaussianField) {
  // Q(i) acting on Q^8 by four standard blocks; H alternating, J-antiinvariant.
  QMatrix J(8, 8), H(8, 8);
  for (std::size_t k = 0; k < 4; ++k) {
    J(2 * k + 1, 2 * k) = 1;
    J(2 * k, 2 * k + 1) = -1;
    H(2 * k, 2 * k + 1) = 1;
    H(2 * k + 1, 2 * k) = -1;
  }
  EStructure s(FieldSpec::quadratic(-1), J);
  LieAlgebra su = lie_su(s, H);
  EXPECT_EQ(su.basis.size(), 15u);
  EXPECT_TRUE(is_bracket_closed(su));
}

TEST(Invariants, SchurTrace) {
  LieRep rep = make_rep(lie_sl(2), parse_carrier("prod(std,dual)"));
  auto basis = invariant_basis(rep);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], tensor_to_carrier(contraction_tensor(2)));
}

TEST(Invariants, OrthogonalVersusSpecialOrthogonal) {
  const QMatrix g = QMatrix::identity(3);
  LieRep so = make_rep(lie_so(g), parse_carrier("tensor(3,std)"));
  EXPECT_EQ(invariant_basis(so).size(), 1u);
  LieRep o = make_rep(lie_so(g), parse_carrier("tensor(3,std)"), {reflection(g, QVector{1, 0, 0})});
  EXPECT_EQ(invariant_basis(o).size(), 0u);
}

TEST(Invariants, MatchesDenseOracle) {
  const std::vector<std::pair<LieAlgebra, std::string>> cases{
      {lie_sl(2), "wedge(2,pow(sum(std,dual),2))"}, {lie_so(QMatrix::identity(3)), "tensor(4,std)"},
      {lie_sp(4), "wedge(2,std)"},                  {lie_gl(2), "prod(tensor(2,std),tensor(2,dual))"},
      {lie_sl(3), "wedge(3,std)"},
  };
  for (const auto& [lie, text] : cases) {
    LieRep rep = make_rep(lie, parse_carrier(text));
    auto basis = invariant_basis(rep);
    EXPECT_EQ(basis.size(), dense_invariant_dim(rep)) << text;
    for (const auto& v : basis) EXPECT_TRUE(is_invariant(rep, v));
  }
}

TEST(InvariantsProperty, IndependentOfLieBasis) {
  LieAlgebra so = lie_so(QMatrix::identity(3));
  const CarrierExpr c = parse_carrier("tensor(4,std)");
  auto reference = invariant_basis(make_rep(so, c));
  for (int trial = 0; trial < 5; ++trial) {
    LieAlgebra mixed{3, {}};
    QMatrix m = rand_invertible(3);
    for (std::size_t i = 0; i < 3; ++i) {
      QMatrix x(3, 3);
      for (std::size_t j = 0; j < 3; ++j) x += so.basis[j] * m(i, j);
      mixed.basis.push_back(x);
    }
    EXPECT_EQ(invariant_basis(make_rep(mixed, c)), reference);
  }
}

TEST(InvariantsProperty, FieldExtensionKeepsKernelDimension) {
  LieRep rep = make_rep(lie_sl(2), parse_carrier("wedge(2,pow(sum(std,dual),2))"));
  const std::size_t dim = *carrier_dim(rep.carrier, 2);
  std::vector<QVector> rows;
  for (const auto& x : rep.basis) {
    QMatrix a = carrier_action_dense(rep.carrier, x, ActionMode::Derivation);
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(a.row(i));
  }
  const std::size_t over_q = dim - rank(stack_rows(rows, dim));
  for (std::int64_t d : {2, -1, 7}) {
    // Mix rows with irrational coefficients; the row space over Q(sqrt d) keeps its rank.
    const FieldSpec f = FieldSpec::quadratic(d);
    ExactMatrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const QuadNumber s = rand_element(f) + QuadNumber(10);
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = s * QuadNumber(rows[i][j]);
    }
    EXPECT_EQ(dim - rank(m), over_q);
  }
}

TEST(Invariants, ThreadCountDoesNotChangeResult) {
  LieRep rep = make_rep(lie_sl(4), parse_carrier("wedge(4,sum(std,dual))"));
  setenv("HODGELAB_THREADS", "1", 1);
  auto one = invariant_basis(rep);
  setenv("HODGELAB_THREADS", "4", 1);
  auto four = invariant_basis(rep);
  unsetenv("HODGELAB_THREADS");
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.size(), 3u);
}

TEST(Contractions, Counts) {
  EXPECT_EQ(complete_contractions(1, 3).size(), 1u);
  auto c2 = complete_contractions(2, 2);
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(span_rank(c2, 16), 2u);
  EXPECT_EQ(c2[0], tensor_to_carrier(tensor_product(contraction_tensor(2), contraction_tensor(2)).permute_slots({0, 2, 1, 3})));
}

TEST(Coverage, SecondOrthogonalInvariants) {
  LieRep rep = make_rep(lie_so(QMatrix::identity(3)), parse_carrier("tensor(4,std)"));
  CoverageReport r = generator_coverage(rep, {form_tensor(QMatrix::identity(3))});
  EXPECT_EQ(r.invariant_dim, 3u);
  EXPECT_EQ(r.span_dim, 3u);
  EXPECT_TRUE(r.equal);
}

TEST(Coverage, GeneralLinearMixedDegreesVanish) {
  LieRep rep = make_rep(lie_gl(2), parse_carrier("prod(tensor(2,std),tensor(1,dual))"));
  EXPECT_EQ(invariant_basis(rep).size(), 0u);
}

TEST(Coverage, WeilGeneratorsOnTwoCopies) {
  LieRep rep = make_rep(lie_sl(2), parse_carrier("wedge(2,pow(sum(std,dual),2))"));
  auto gens = weil_generators(2, 2);
  EXPECT_EQ(gens.size(), 10u);
  std::vector<Generator> g(gens.begin(), gens.end());
  CoverageReport r = generator_coverage(rep, g);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.invariant_dim, dense_invariant_dim(rep));
}

namespace {

// Brute force: every subset of F_2^m closed under xor, containing 0, and permutation stable.
std::size_t brute_stable_count(std::size_t m, const std::vector<std::vector<std::size_t>>& perms) {
  const std::uint32_t size = 1U << m;
  std::size_t count = 0;
  for (std::uint64_t set = 0; set < (std::uint64_t{1} << size); ++set) {
    if (!(set & 1U)) continue;
    bool ok = true;
    for (std::uint32_t x = 0; x < size && ok; ++x) {
      if (!((set >> x) & 1U)) continue;
      for (std::uint32_t y = 0; y < size && ok; ++y)
        if (((set >> y) & 1U) && !((set >> (x ^ y)) & 1U)) ok = false;
      for (const auto& p : perms) {
        std::uint32_t img = 0;
        for (std::size_t i = 0; i < m; ++i)
          if ((x >> i) & 1U) img |= 1U << p[i];
        if (!((set >> img) & 1U)) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST(Galois, StableSubgroups) {
  EXPECT_EQ(galois_stable_subgroups(1, {}).size(), 2u);
  auto swap = galois_stable_subgroups(2, {{1, 0}});
  ASSERT_EQ(swap.size(), 3u);
  EXPECT_EQ(swap[0], (F2Subspace{0}));
  EXPECT_EQ(swap[1], (F2Subspace{0, 3}));
  EXPECT_EQ(galois_stable_subgroups(3, {{1, 2, 0}}).size(), 4u);
  for (const auto& perms : std::vector<std::vector<std::vector<std::size_t>>>{{{1, 2, 0}}, {{1, 0, 2}}, {}}) {
    EXPECT_EQ(galois_stable_subgroups(3, perms).size(), brute_stable_count(3, perms));
  }
  EXPECT_EQ(galois_stable_subgroups(4, {{1, 0, 3, 2}}).size(), brute_stable_count(4, {{1, 0, 3, 2}}));
  EXPECT_THROW(galois_stable_subgroups(7, {}), DomainError);
  EXPECT_THROW(galois_stable_subgroups(2, {{0, 0}}), DomainError);
}

TEST(Invariants, WeilClassesAreSpecialUnitaryInvariant) {
  QMatrix J = QMatrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  QMatrix H = QMatrix::from_rows({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 3}, {0, 0, -3, 0}});
  EStructure s(FieldSpec::quadratic(-1), J);
  LieRep rep = make_rep(lie_su(s, H), parse_carrier("wedge(2,std)"));
  auto basis = invariant_basis(rep);
  SparseEchelon span;
  for (const auto& v : basis) span.insert(v);
  for (const auto& w : weil_classes(s, H)) EXPECT_TRUE(span.contains(wedge_to_carrier(w)));
}
