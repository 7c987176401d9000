#include <gtest/gtest.h>

#include "qs/error.hpp"
#include "qs/intmat.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace qs {
namespace {

using testing::cofactor_det;
using testing::Rng;

IntMatrix m2(long a, long b, long c, long d) { return IntMatrix(2, {a, b, c, d}); }

TEST(Det, ExamplesAgainstCofactorOracle) {
  EXPECT_EQ(det(IntMatrix::identity(2)), 1);
  EXPECT_EQ(det(IntMatrix::diagonal({2, 3})), 6);
  const IntMatrix m = m2(2, 1, 0, 3);
  EXPECT_EQ(det(m), cofactor_det(m));
  EXPECT_EQ(det(m), 6);
}

TEST(Det, AgreesWithCofactorExpansionOnRandomMatrices) {
  Rng rng(11);
  for (std::size_t d = 1; d <= 6; ++d)
    for (int i = 0; i < 40; ++i) {
      const IntMatrix m = testing::random_matrix(rng, d, 9);
      ASSERT_EQ(det(m), cofactor_det(m)) << m.to_string();
    }
}

TEST(Adjugate, Examples) {
  EXPECT_EQ(adjugate(IntMatrix::identity(3)), IntMatrix::identity(3));
  EXPECT_EQ(adjugate(m2(4, 7, -2, 5)), m2(5, -7, 2, 4));
  EXPECT_EQ(adjugate(IntMatrix::diagonal({2, 3})), IntMatrix::diagonal({3, 2}));
  const IntMatrix d = IntMatrix::diagonal({2, 3});
  EXPECT_EQ(d * adjugate(d), IntMatrix::scalar(2, 6));
}

TEST(Adjugate, ProductIsDeterminantTimesIdentity) {
  Rng rng(12);
  for (std::size_t d = 1; d <= 5; ++d)
    for (int i = 0; i < 40; ++i) {
      const IntMatrix m = testing::random_matrix(rng, d, 9);
      const IntMatrix s = IntMatrix::scalar(d, det(m));
      ASSERT_EQ(m * adjugate(m), s);
      ASSERT_EQ(adjugate(m) * m, s);
    }
}

TEST(Hnf, Examples) {
  const HermiteForm id = hnf(IntMatrix::identity(2));
  EXPECT_EQ(id.h, IntMatrix::identity(2));
  EXPECT_EQ(id.u, IntMatrix::identity(2));
  EXPECT_EQ(hnf(m2(0, 1, 1, 0)).h, IntMatrix::identity(2));
  const IntMatrix m = m2(2, 0, 1, 1);
  const HermiteForm f = hnf(m);
  EXPECT_EQ(abs(det(f.h)), abs(det(m)));
  EXPECT_EQ(f.u * m, f.h);
}

TEST(Hnf, SingularThrows) {
  try {
    hnf(m2(1, 2, 2, 4));
    FAIL() << "expected SingularMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Hnf, ShapeTransformAndIdempotence) {
  Rng rng(13);
  for (std::size_t d = 1; d <= 4; ++d)
    for (int i = 0; i < 50; ++i) {
      const IntMatrix m = testing::random_nonsingular(rng, d, 9);
      const HermiteForm f = hnf(m);
      ASSERT_TRUE(is_unimodular(f.u));
      ASSERT_EQ(f.u * m, f.h);
      ASSERT_TRUE(f.h.is_upper_triangular());
      for (std::size_t c = 0; c < d; ++c) {
        ASSERT_GT(f.h(c, c), 0);
        for (std::size_t r = 0; r < c; ++r) {
          ASSERT_GE(f.h(r, c), 0);
          ASSERT_LT(f.h(r, c), f.h(c, c));
        }
      }
      const HermiteForm again = hnf(f.h);
      ASSERT_EQ(again.h, f.h);
      ASSERT_EQ(again.u, IntMatrix::identity(d));
    }
}

TEST(Hnf, CanonicalUnderUnimodularRowOperations) {
  Rng rng(14);
  for (std::size_t d = 1; d <= 4; ++d)
    for (int i = 0; i < 50; ++i) {
      const IntMatrix m = testing::random_nonsingular(rng, d, 6);
      const IntMatrix w = testing::random_unimodular(rng, d);
      ASSERT_EQ(hnf(w * m).h, hnf(m).h);
    }
}

TEST(Snf, Examples) {
  const SmithDecomposition id = snf(IntMatrix::identity(2));
  EXPECT_EQ(id.u, IntMatrix::identity(2));
  EXPECT_EQ(id.d, IntMatrix::identity(2));
  EXPECT_EQ(id.v, IntMatrix::identity(2));
  EXPECT_EQ(snf(IntMatrix::diagonal({2, 3})).d, IntMatrix::diagonal({1, 6}));
  EXPECT_EQ(snf(IntMatrix::scalar(2, 2)).d, IntMatrix::diagonal({2, 2}));
}

TEST(Snf, DecompositionPropertiesAndDeterminantalDivisors) {
  Rng rng(15);
  for (std::size_t d = 1; d <= 4; ++d)
    for (int i = 0; i < 40; ++i) {
      const IntMatrix m = testing::random_nonsingular(rng, d, 9);
      const SmithDecomposition s = snf(m);
      ASSERT_EQ(s.u * s.d * s.v, m);
      ASSERT_TRUE(is_unimodular(s.u));
      ASSERT_TRUE(is_unimodular(s.v));
      ASSERT_TRUE(s.d.is_diagonal());
      Integer product = 1;
      const std::vector<Integer> expected = testing::smith_by_minors(m);
      for (std::size_t k = 0; k < d; ++k) {
        ASSERT_GT(s.d(k, k), 0);
        if (k + 1 < d) ASSERT_EQ(s.d(k + 1, k + 1) % s.d(k, k), 0);
        ASSERT_EQ(s.d(k, k), expected[k]);
        product *= s.d(k, k);
      }
      ASSERT_EQ(product, abs(det(m)));
    }
}

TEST(Snf, SingularThrows) { EXPECT_THROW(snf(m2(2, 4, 1, 2)), Error); }

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_unimodular(IntMatrix::identity(3)));
  EXPECT_FALSE(is_unimodular(IntMatrix::diagonal({2, 1})));
  const IntMatrix m = m2(1, 5, 0, -1);
  EXPECT_EQ(cofactor_det(m), -1);
  EXPECT_TRUE(is_unimodular(m));
}

TEST(ModInverseReduced, Examples) {
  EXPECT_EQ(mod_inverse_reduced(3, 2), 1);
  EXPECT_EQ(mod_inverse_reduced(2, 4), 1);
  EXPECT_EQ(mod_inverse_reduced(1, 1), 0);
}

TEST(ModInverseReduced, ExhaustiveAgainstSearch) {
  for (long a = 1; a <= 50; ++a)
    for (long b = 1; b <= 50; ++b) {
      const long k = testing::euclid_gcd(a, b);
      const long mod = a / k, bb = b / k;
      const Integer c = mod_inverse_reduced(b, a);
      if (mod == 1) {
        ASSERT_EQ(c, 0);
        continue;
      }
      long expected = -1;
      for (long x = 0; x < mod && expected < 0; ++x)
        if ((bb * x) % mod == 1) expected = x;
      ASSERT_EQ(c, expected) << "b=" << b << " a=" << a;
    }
}

TEST(FloorDiv, MixedSigns) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(floor_div(-6, 3), -2);
}

TEST(IntMatrix, LargeEntriesStayExact) {
  // 2^100 cannot survive a round trip through a double.
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 100);
  const IntMatrix m(2, {big, Integer(1), Integer(0), big});
  EXPECT_EQ(det(m), big * big);
  EXPECT_EQ(m * adjugate(m), IntMatrix::scalar(2, big * big));
}

}  // namespace
}  // namespace qs
