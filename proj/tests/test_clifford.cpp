#include <gtest/gtest.h>

#include "hodgelab/clifford.hpp"
#include "support.hpp"

using namespace hodgelab;
using namespace testing_support;

namespace {

CliffordElement rand_clifford(const CliffordAlgebra& alg) {
  CliffordElement x;
  for (Blade s : alg.all_blades())
    if (rand_int(0, 2) == 0) x.add(s, QuadNumber(rand_rational()));
  return x;
}

std::vector<Rational> rand_qvals(std::size_t n) {
  std::vector<Rational> q;
  for (std::size_t i = 0; i < n; ++i) q.push_back(rand_nonzero_rational(3, 2));
  return q;
}

}  // namespace

TEST(Clifford, Dimensions) {
  for (std::size_t n = 1; n <= 6; ++n) {
    CliffordAlgebra alg(std::vector<Rational>(n, Rational(1)));
    EXPECT_EQ(alg.dim(), std::size_t{1} << n);
    EXPECT_EQ(alg.even_dim(), std::size_t{1} << (n - 1));
    EXPECT_EQ(alg.even_blades().size(), alg.even_dim());
  }
  EXPECT_THROW(CliffordAlgebra({Rational(1), Rational(0)}), DegenerateError);
}

TEST(Clifford, GeneratorRelations) {
  CliffordAlgebra alg({3, -2, Rational(1, 2)});
  for (std::size_t i = 0; i < 3; ++i) {
    CliffordElement ei = CliffordElement::blade(Blade{1} << i);
    EXPECT_EQ(clifford_mul(ei, ei, alg), CliffordElement::scalar(QuadNumber(alg.qvals()[i])));
    for (std::size_t j = i + 1; j < 3; ++j) {
      CliffordElement ej = CliffordElement::blade(Blade{1} << j);
      EXPECT_TRUE((clifford_mul(ei, ej, alg) + clifford_mul(ej, ei, alg)).is_zero());
    }
  }
}

TEST(Clifford, OmegaSquaredOnPlane) {
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a = rand_nonzero_rational(9, 1), b = rand_nonzero_rational(9, 1);
    EXPECT_EQ(omega_squared(CliffordAlgebra({a, b})), -a * b);
  }
}

TEST(Clifford, Centers) {
  CliffordAlgebra plane({1, -3});
  EXPECT_EQ(center(plane, true).size(), 2u);
  EXPECT_EQ(center(plane, false).size(), 1u);
  CliffordAlgebra three({1, 2, 3});
  EXPECT_EQ(center(three, false).size(), 2u);
  EXPECT_EQ(center(three, true).size(), 1u);
}

TEST(Clifford, BuildFromNonDiagonalGram) {
  QuadraticSpace s(QMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}));
  CliffordBuild b = clifford_build(s);
  QMatrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i) d(i, i) = b.algebra.qvals()[i];
  EXPECT_EQ(b.P.transpose() * s.gram() * b.P, d);
}

TEST(CliffordProperty, Associativity) {
  CliffordAlgebra alg(rand_qvals(4));
  for (int trial = 0; trial < 30; ++trial) {
    CliffordElement x = rand_clifford(alg), y = rand_clifford(alg), z = rand_clifford(alg);
    EXPECT_EQ(clifford_mul(clifford_mul(x, y, alg), z, alg), clifford_mul(x, clifford_mul(y, z, alg), alg));
  }
}

TEST(CliffordProperty, ConjugationByVectorIsMinusReflection) {
  const std::size_t n = 4;
  CliffordAlgebra alg(rand_qvals(n));
  for (int trial = 0; trial < 20; ++trial) {
    ExactVector w = to_exact(rand_vector(n));
    const QuadNumber qw = quadratic_value(w, alg);
    if (qw.is_zero()) continue;
    ExactVector v = to_exact(rand_vector(n));
    QuadNumber pvw = 0;
    for (std::size_t i = 0; i < n; ++i) pvw += v[i] * w[i] * QuadNumber(alg.qvals()[i]);
    ExactVector expected(n);
    for (std::size_t i = 0; i < n; ++i) expected[i] = QuadNumber(-1) * (v[i] - QuadNumber(2) * pvw / qw * w[i]);
    CliffordElement g = CliffordElement::vector(w);
    EXPECT_EQ(spin_conjugate(g, v, alg), expected);
  }
}

TEST(Clifford, InverseOfNonInvertible) {
  CliffordAlgebra alg({1, -1});
  CliffordElement isotropic = CliffordElement::vector(to_exact(QVector{1, 1}));
  EXPECT_THROW(clifford_inverse(isotropic, alg), DomainError);
}

TEST(Clifford, KsEmbedNeedsAnisotropicBasePoint) {
  CliffordAlgebra alg({1, -1, 2});
  EXPECT_THROW(ks_embed(to_exact(QVector{1, 0, 0}), to_exact(QVector{1, 1, 0}), alg), DomainError);
  ExactMatrix m = ks_embed(to_exact(QVector{1, 0, 0}), to_exact(QVector{0, 0, 1}), alg);
  EXPECT_EQ(m.rows(), alg.even_dim());
}

TEST(CliffordJson, Terms) {
  CliffordAlgebra alg({1, 1, 1});
  Json j = clifford_to_json(CliffordElement::blade(0b101, QuadNumber(Rational(1, 2))), alg);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["terms"][0]["set"], Json::array({1, 3}));
  EXPECT_EQ(j["terms"][0]["coeff"], "1/2");
}
