#include <gtest/gtest.h>

#include "hodgelab/descent.hpp"
#include "support.hpp"

using namespace hodgelab;
using namespace testing_support;

namespace {

EStructure rand_structure(std::int64_t d, std::size_t r) {
  return EStructure(FieldSpec::quadratic(d), rand_structure_matrix(d, r));
}

}  // namespace

TEST(EStructure, Validation) {
  EXPECT_THROW(EStructure(FieldSpec::quadratic(2), QMatrix::identity(2)), DomainError);
  EXPECT_THROW(EStructure(FieldSpec::quadratic(-1), QMatrix::identity(3)), DomainError);
  EStructure s(FieldSpec::quadratic(-1), QMatrix::from_rows({{0, -1}, {1, 0}}));
  EXPECT_EQ(s.e_dim(), 1u);
  EXPECT_EQ(s.q_basis().column(1), s.J() * s.e_basis()[0]);
}

TEST(EStructure, JsonRoundTrip) {
  EStructure s = rand_structure(5, 2);
  EStructure t = structure_from_json(structure_to_json(s));
  EXPECT_EQ(t.J(), s.J());
  EXPECT_EQ(t.d(), 5);
}

TEST(TraceDescent, IncompatibleRejected) {
  EStructure s(FieldSpec::quadratic(2), QMatrix::from_rows({{0, 2}, {1, 0}}));
  // psi = diag(1, 1) fails J^T psi = psi J.
  EXPECT_THROW(trace_descend(QMatrix::identity(2), s, false), IncompatibleError);
  EXPECT_THROW(trace_descend(QMatrix::from_rows({{0, 0}, {0, 0}}), s, false), Error);
}

TEST(TraceDescentProperty, RecoversRandomForm) {
  for (std::int64_t d : {2, -1, 5, -3}) {
    for (bool hermitian : {false, true}) {
      for (int trial = 0; trial < 4; ++trial) {
        EStructure s = rand_structure(d, 2);
        FormPair fp = rand_compatible_form(s, hermitian);
        EValuedForm phi = trace_descend(fp.psi, s, hermitian);
        EXPECT_EQ(phi.gram, fp.phi0) << "d=" << d << " hermitian=" << hermitian;
        EXPECT_EQ(phi.solution_space_dim, 0u);
        EXPECT_TRUE(hermitian ? phi.is_hermitian() : phi.is_symmetric());
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            EXPECT_EQ(field_trace_norm(phi.evaluate(unit_vector(4, i), unit_vector(4, j)), s.field()).first,
                      fp.psi(i, j));
      }
    }
  }
}

TEST(Eigenspaces, JActsBySqrtD) {
  for (std::int64_t d : {2, -3}) {
    EStructure s = rand_structure(d, 2);
    auto [plus, minus] = eigenspace_decompose(s);
    ASSERT_EQ(plus.size(), 2u);
    ASSERT_EQ(minus.size(), 2u);
    const QuadNumber r = QuadNumber::sqrt_d(s.field());
    const ExactMatrix J = to_exact(s.J());
    for (const auto& v : plus) {
      ExactVector jv = J * v;
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(jv[i], r * v[i]);
    }
    for (const auto& v : minus) {
      ExactVector jv = J * v;
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(jv[i], QuadNumber(-1) * r * v[i]);
    }
  }
}

TEST(WedgeEmbed, RationalAndIndependent) {
  EStructure s = rand_structure(2, 2);
  auto img = wedge_E_embed(s);
  ASSERT_EQ(img.size(), 2u);
  for (const auto& w : img)
    for (const auto& [idx, c] : w.terms()) EXPECT_TRUE(c.is_rational());
  EXPECT_FALSE(proportionality(wedge_to_tensor(img[0]), wedge_to_tensor(img[1])).has_value());
}

TEST(WeilHermitian, FromAlternatingForm) {
  // J = standard complex structure on Q^4, H alternating with J^T H = -H J.
  QMatrix J = QMatrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  EStructure s(FieldSpec::quadratic(-1), J);
  QMatrix H = QMatrix::from_rows({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -2, 0}});
  EValuedForm h = weil_hermitian(H, s);
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_TRUE(h.sesquilinear);
  auto classes = weil_classes(s, H);
  EXPECT_EQ(classes.size(), 2u);
  EXPECT_THROW(weil_hermitian(QMatrix::identity(4), s), Error);
}
