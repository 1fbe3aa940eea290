#include "tiltsmith/error.hpp"
#include "tiltsmith/field.hpp"
#include "tiltsmith/matrix.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace tiltsmith;

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, ExhaustiveTables) {
  const FieldPtr F = FqField::builtin(GetParam());
  const int q = F->q();
  for (int a = 0; a < q; ++a) {
    EXPECT_EQ(F->add(a, 0), a);
    EXPECT_EQ(F->mul(a, 1), a);
    EXPECT_EQ(F->add(a, F->neg(a)), 0);
    if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1);
    for (int b = 0; b < q; ++b) {
      EXPECT_EQ(F->add(a, b), F->add(b, a));
      EXPECT_EQ(F->mul(a, b), F->mul(b, a));
      for (int c = 0; c < q; ++c) {
        EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
        EXPECT_EQ(F->mul(a, F->mul(b, c)), F->mul(F->mul(a, b), c));
      }
    }
  }
}

TEST_P(FieldAxioms, PrimitiveElementGeneratesUnits) {
  const FieldPtr F = FqField::builtin(GetParam());
  std::set<Fq> seen;
  for (int k = 0; k < F->q() - 1; ++k) seen.insert(F->pow(F->primitive_element(), k));
  EXPECT_EQ(static_cast<int>(seen.size()), F->q() - 1);
}

TEST_P(FieldAxioms, CoefficientRoundTrip) {
  const FieldPtr F = FqField::builtin(GetParam());
  for (int a = 0; a < F->q(); ++a) EXPECT_EQ(F->from_coeffs(F->to_coeffs(a)), a);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms, ::testing::Values(2, 3, 4, 5, 8, 9, 25, 27));

TEST(Field, Gf4OmegaSatisfiesMinimalPolynomial) {
  const FieldPtr F = FqField::builtin(4);
  const Fq w = 2;  // x
  EXPECT_EQ(F->add(F->add(F->mul(w, w), w), 1), 0);
}

TEST(Field, Gf9XSquaredIsMinusOne) {
  const FieldPtr F = FqField::builtin(9);
  EXPECT_EQ(F->mul(3, 3), F->neg(1));
}

TEST(Field, RejectsReducibleModulus) {
  EXPECT_THROW(FqField::make(2, 2, {1, 0, 1}), Error);
  EXPECT_THROW(FqField::make(4, 1, {0, 1}), Error);
}

namespace {

Matrix random_matrix(const FieldPtr& F, int r, int c, std::mt19937& rng, int zero_bias = 0) {
  std::uniform_int_distribution<int> d(-zero_bias, F->q() - 1);
  Matrix m(F, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<Fq>(std::max(0, d(rng)));
  return m;
}

}  // namespace

TEST(Matrix, RankNullityAndKernel) {
  std::mt19937 rng(7);
  for (int q : {2, 3, 4, 9}) {
    const FieldPtr F = FqField::builtin(q);
    for (int t = 0; t < 30; ++t) {
      const Matrix a = random_matrix(F, 1 + t % 6, 1 + (t * 7) % 5, rng, 3);
      const Matrix k = kernel_basis(a);
      EXPECT_EQ(rank(a) + k.cols(), a.cols());
      EXPECT_TRUE((a * k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(Matrix, InverseAgainstIdentity) {
  std::mt19937 rng(11);
  const FieldPtr F = FqField::builtin(9);
  int invertible = 0;
  for (int t = 0; t < 40; ++t) {
    const Matrix a = random_matrix(F, 4, 4, rng);
    const auto inv = inverse(a);
    ASSERT_EQ(inv.has_value(), rank(a) == 4);
    if (inv) {
      ++invertible;
      EXPECT_EQ(a * *inv, Matrix::identity(F, 4));
      EXPECT_EQ(*inv * a, Matrix::identity(F, 4));
    }
  }
  EXPECT_GT(invertible, 0);
}

TEST(Matrix, SolveRightFindsSolutionsWhenConsistent) {
  std::mt19937 rng(3);
  const FieldPtr F = FqField::builtin(4);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = random_matrix(F, 4, 3, rng, 2);
    const Matrix x = random_matrix(F, 3, 2, rng);
    const Matrix b = a * x;
    const auto y = solve_right(a, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(a * *y, b);
  }
}

TEST(Matrix, RrefIsIdempotent) {
  std::mt19937 rng(5);
  const FieldPtr F = FqField::builtin(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(F, 5, 6, rng, 2);
    const auto r1 = rref(a);
    const auto r2 = rref(r1.reduced);
    EXPECT_EQ(r1.reduced, r2.reduced);
    EXPECT_EQ(r1.pivots, r2.pivots);
  }
}
