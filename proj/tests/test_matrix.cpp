#include <gtest/gtest.h>

#include <cmath>

#include "hhmat/matrix.hpp"
#include "hhmat/random.hpp"

using namespace hhmat;

TEST(CMatrix, ProductAndAdjoint) {
  const CMatrix a{{1.0, cplx(0, 1)}, {2.0, 3.0}};
  const CMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const CMatrix ab = a * b;
  EXPECT_EQ(ab(0, 0), cplx(0, 1));
  EXPECT_EQ(ab(0, 1), cplx(1, 0));
  EXPECT_EQ(ab(1, 0), cplx(3, 0));
  const CMatrix ad = a.adjoint();
  EXPECT_EQ(ad(1, 0), cplx(0, -1));
  EXPECT_EQ(ad(0, 1), cplx(2, 0));
}

TEST(CMatrix, RejectsBadInput) {
  EXPECT_THROW(CMatrix(2, 2, std::vector<cplx>(3)), DimensionMismatch);
  EXPECT_THROW(CMatrix(1, 1, {cplx(NAN, 0)}), InvalidArgument);
  EXPECT_THROW((CMatrix{{1.0, 2.0}, {3.0}}), DimensionMismatch);
  EXPECT_THROW(CMatrix(2, 3) * CMatrix(2, 3), DimensionMismatch);
}

TEST(CMatrix, BlocksRoundTrip) {
  CMatrix m(4, 4);
  const CMatrix b{{1.0, 2.0}, {3.0, 4.0}};
  m.set_block(2, 1, b);
  EXPECT_EQ(distance(m.block(2, 1, 2, 2), b), 0.0);
  EXPECT_THROW(m.block(3, 3, 2, 2), DimensionMismatch);
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  EXPECT_THROW((HermitianMatrix{{1.0, 2.0}, {0.0, 1.0}}), NotHermitian);
  EXPECT_THROW(HermitianMatrix(CMatrix(2, 3)), DimensionMismatch);
  // within 1e-12 relative: accepted and symmetrized exactly
  const HermitianMatrix h{{1.0, cplx(2, 1e-14)}, {cplx(2, 0), 1.0}};
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermitianMatrix, DirectSumDiagonal) {
  const HermitianMatrix s = direct_sum(HermitianMatrix::diagonal({1.0}), HermitianMatrix::diagonal({2.0}));
  EXPECT_EQ(distance(s.matrix(), HermitianMatrix::diagonal({1.0, 2.0}).matrix()), 0.0);
}

TEST(HermitianMatrix, DirectSumTraceAdditive) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto a = gen_hermitian(3, rng, {-2.0, 2.0});
    const auto b = gen_hermitian(3, rng, {-2.0, 2.0});
    EXPECT_NEAR(direct_sum(a, b).trace(), a.trace() + b.trace(), 1e-12);
  }
}

TEST(HermitianMatrix, CongruenceAndBlocks) {
  const HermitianMatrix a{{2.0, cplx(0, 1)}, {cplx(0, -1), 3.0}};
  const CMatrix e0{{1.0}, {0.0}};
  const HermitianMatrix c = a.congruence(e0);
  ASSERT_EQ(c.dim(), 1u);
  EXPECT_EQ(c(0, 0), cplx(2.0));
  const HermitianMatrix s = direct_sum(a, HermitianMatrix::identity(2));
  EXPECT_EQ(distance(s.principal_block(0, 2).matrix(), a.matrix()), 0.0);
  EXPECT_EQ(distance(s.principal_block(2, 2).matrix(), CMatrix::identity(2)), 0.0);
}

TEST(RealMatrix, ApplyAndProduct) {
  RealMatrix p(2, 2);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  const std::vector<double> v{3.0, 5.0};
  EXPECT_EQ(p.apply(v), (std::vector<double>{5.0, 3.0}));
  EXPECT_EQ((p * p).max_abs_diff(RealMatrix::identity(2)), 0.0);
}
