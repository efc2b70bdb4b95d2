#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hhmat/io.hpp"
#include "hhmat/majorize.hpp"
#include "hhmat/random.hpp"
#include "oracle.hpp"

using namespace hhmat;

namespace {

RealMatrix random_dstoch(std::size_t n, std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(terms);
  for (auto& x : w) x = u(rng);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  RealMatrix d(n, n);
  for (std::size_t k = 0; k < terms; ++k) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    for (std::size_t i = 0; i < n; ++i) d(i, p[i]) += w[k] / s;
  }
  return d;
}

RealMatrix recompose(const BirkhoffDecomposition& b, std::size_t n) {
  RealMatrix r(n, n);
  for (std::size_t j = 0; j < b.perms.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) r(i, b.perms[j][i]) += b.weights[j];
  return r;
}

}  // namespace

TEST(Majorization, WeakExamples) {
  EXPECT_TRUE(weakly_majorizes(HermitianMatrix::diagonal({2.0, 1.0}), HermitianMatrix::diagonal({1.0, 1.0})));
  const auto a = HermitianMatrix::diagonal({0.3, -1.0});
  EXPECT_TRUE(weakly_majorizes(a, a));
  EXPECT_FALSE(weakly_majorizes(HermitianMatrix::diagonal({1.0, 1.0}), HermitianMatrix::diagonal({2.0, 0.0})));
}

TEST(Majorization, StrictExamples) {
  EXPECT_TRUE(majorizes(HermitianMatrix::diagonal({3.0, 1.0}), HermitianMatrix::diagonal({2.0, 2.0})));
  EXPECT_FALSE(majorizes(HermitianMatrix::diagonal({3.0, 1.0}), HermitianMatrix::diagonal({1.0, 0.0})));
  EXPECT_THROW(majorizes(std::vector<double>{1.0}, std::vector<double>{1.0, 0.0}), DimensionMismatch);
}

TEST(HlpChain, TwoByTwo) {
  const std::vector<double> a{3.0, 1.0}, b{4.0, 0.0};
  const auto c = hlp_chain(a, b);
  EXPECT_NEAR(c.dstoch(0, 0), 0.75, 1e-15);
  EXPECT_NEAR(c.dstoch(0, 1), 0.25, 1e-15);
  EXPECT_NEAR(c.dstoch(1, 0), 0.25, 1e-15);
  EXPECT_NEAR(c.dstoch(1, 1), 0.75, 1e-15);
  EXPECT_EQ(c.t_transforms, 1u);
}

TEST(HlpChain, EqualVectorsGiveIdentity) {
  const std::vector<double> a{1.0, -2.0, 5.0};
  const auto c = hlp_chain(a, a);
  EXPECT_EQ(c.dstoch.max_abs_diff(RealMatrix::identity(3)), 0.0);
  EXPECT_EQ(c.t_transforms, 0u);
}

TEST(HlpChain, ThreeVector) {
  const std::vector<double> a{2.0, 2.0, 2.0}, b{3.0, 2.0, 1.0};
  const auto c = hlp_chain(a, b);
  EXPECT_LE(c.t_transforms, 2u);
  const auto img = c.dstoch.apply(b);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(img[i], a[i], 1e-14);
  EXPECT_TRUE(c.invariant_violations().empty());
}

TEST(HlpChain, UnsortedCoordinatesAndErrors) {
  const std::vector<double> a{1.0, 3.0, 2.0}, b{0.0, 4.0, 2.0};
  const auto c = hlp_chain(a, b);
  EXPECT_TRUE(c.invariant_violations().empty());
  EXPECT_THROW(hlp_chain(std::vector<double>{3.0, 0.0}, std::vector<double>{2.0, 1.0}), NotMajorized);
}

TEST(Birkhoff, Examples) {
  RealMatrix half(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) half(i, j) = 0.5;
  const auto b = birkhoff(half);
  ASSERT_EQ(b.perms.size(), 2u);
  EXPECT_NEAR(b.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(b.weights[1], 0.5, 1e-15);
  EXPECT_NE(b.perms[0], b.perms[1]);

  const Permutation p{2, 0, 3, 1};
  const auto bp = birkhoff(permutation_matrix(p));
  ASSERT_EQ(bp.perms.size(), 1u);
  EXPECT_EQ(bp.perms[0], p);
  EXPECT_EQ(bp.weights[0], 1.0);

  RealMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  EXPECT_THROW(birkhoff(bad), InvalidArgument);
}

TEST(Birkhoff, ConstructThenDecompose) {
  Rng rng(44);
  for (int k = 0; k < 50; ++k) {
    const RealMatrix d = random_dstoch(4, 3, rng);
    const auto b = birkhoff(d);
    EXPECT_LE(recompose(b, 4).max_abs_diff(d), 1e-12);
    EXPECT_LE(b.perms.size(), 3u * 3u + 1u);
  }
}

TEST(Birkhoff, RoundTripWithHlp) {
  Rng rng(45);
  std::normal_distribution<double> g;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 7;
    std::vector<double> b(n);
    for (auto& x : b) x = g(rng);
    const auto a = random_dstoch(n, 1 + k % 4, rng).apply(b);
    MajorizationCert c = hlp_chain(a, b);
    const auto bk = birkhoff(c.dstoch);
    c.weights = bk.weights;
    c.perms = bk.perms;
    const auto bad = c.invariant_violations();
    EXPECT_TRUE(bad.empty()) << bad.front();
  }
}

TEST(Uhlmann, DiagonalExample) {
  const auto s = HermitianMatrix::diagonal({2.0, 2.0});
  const auto t = HermitianMatrix::diagonal({3.0, 1.0});
  const auto c = uhlmann_mixture(s, t);
  ASSERT_EQ(c.weights.size(), 2u);
  EXPECT_NEAR(c.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(c.weights[1], 0.5, 1e-15);
  EXPECT_LT(c.residual, 1e-14);
  // one of the unitaries swaps the coordinates
  const CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  bool found_swap = false;
  for (const auto& v : c.unitaries) {
    const auto vtv = HermitianMatrix::hermitian_part(v * t.matrix() * v.adjoint());
    found_swap |= distance(vtv.matrix(), swap * t.matrix() * swap) < 1e-14;
  }
  EXPECT_TRUE(found_swap);
}

TEST(Uhlmann, EqualInputsSingleTerm) {
  Rng rng(9);
  const auto t = gen_hermitian(4, rng, {-1.0, 1.0});
  const auto c = uhlmann_mixture(t, t);
  ASSERT_EQ(c.weights.size(), 1u);
  EXPECT_EQ(c.weights[0], 1.0);
  EXPECT_LT(c.residual, 1e-12);
}

TEST(Uhlmann, MidpointPinching) {
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const auto a = gen_psd(3, rng), b = gen_psd(3, rng);
    const auto t = direct_sum(a, b);
    const auto s = direct_sum(0.5 * (a + b), 0.5 * (a + b));
    const auto c = uhlmann_mixture(s, t);
    EXPECT_LE(c.residual, 1e-9 * (1 + t.frobenius_norm()));
    for (const auto& v : c.unitaries) EXPECT_LT(distance(v.adjoint() * v, CMatrix::identity(6)), 1e-12);
  }
}

TEST(Uhlmann, AverageOfUnitaryConjugates) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto t = gen_hermitian(n, rng, {-2.0, 2.0});
    HermitianMatrix s = HermitianMatrix::zeros(n);
    for (int j = 0; j < 3; ++j) s = s + (1.0 / 3.0) * t.congruence(haar_unitary(n, rng));
    const auto c = uhlmann_mixture(s, t);
    EXPECT_LE(c.residual, 1e-9 * (1 + t.frobenius_norm()));
  }
  EXPECT_THROW(uhlmann_mixture(HermitianMatrix::diagonal({3.0, 0.0}), HermitianMatrix::diagonal({2.0, 1.0})),
               NotMajorized);
}

TEST(WeightPairs, ScalarExample) {
  const auto w = WeightPair::scalar(0.3, 2);
  EXPECT_LT(distance(w.x_weight(), CMatrix::identity(2) * cplx(std::sqrt(0.7))), 1e-15);
  EXPECT_LT(distance(w.y_weight(), CMatrix::identity(2) * cplx(std::sqrt(0.3))), 1e-15);
  EXPECT_THROW(WeightPair::scalar(1.0, 2), InvalidArgument);
}

TEST(WeightPairs, GeneratedInvariants) {
  const auto cn = gen_weight_pair(WeightKind::commuting_normal, 4, std::uint64_t{7});
  EXPECT_LE(cn.commutator_defect(), 1e-12);
  EXPECT_LE(cn.normality_defect(), 1e-12);
  EXPECT_LE(cn.isometry_defect(), 1e-12);
  EXPECT_LE(cn.phase_defect(), 1e-12);
  const auto bi = gen_weight_pair(WeightKind::bi_isometric, 4, std::uint64_t{7});
  EXPECT_LE(bi.isometry_defect(), 1e-12);
  EXPECT_LE(bi.coisometry_defect(), 1e-12);
  const CMatrix x{{1.0, 0.0}, {0.0, 0.0}};
  EXPECT_THROW(WeightPair::bi_isometric(x, x), InvalidArgument);
}

TEST(WeightPairs, RotationIsUnitaryWithBlocks) {
  Rng rng(12);
  for (WeightKind k : {WeightKind::scalar, WeightKind::commuting_normal}) {
    for (int t = 0; t < 20; ++t) {
      const auto w = gen_weight_pair(k, 3, rng);
      const CMatrix h = weight_unitary(w);
      EXPECT_LE(distance(h.adjoint() * h, CMatrix::identity(6)), 1e-10);
      const auto a = gen_psd(3, rng), b = gen_psd(3, rng);
      const auto r = rotation_congruence(a, b, w);
      EXPECT_LE(distance(r.principal_block(0, 3).matrix(), w.first_combination(a, b).matrix()), 1e-12);
      EXPECT_LE(distance(r.principal_block(3, 3).matrix(), w.second_combination(a, b).matrix()), 1e-12);
    }
  }
}

TEST(WeightPairs, UnrelatedPhasesBreakTheRotation) {
  const json j = read_json_file(std::string(HHMAT_TEST_DATA) + "/phase_counterexample.json");
  const WeightPair w = weight_pair_from_json(j.at("weights"));
  EXPECT_EQ(w.kind(), WeightKind::commuting_normal);
  EXPECT_GT(w.phase_defect(), 0.5);
  EXPECT_GT(distance(weight_unitary(w).adjoint() * weight_unitary(w), CMatrix::identity(2 * w.dim())), 0.5);
}

TEST(PhiMap, Examples) {
  Rng rng(13);
  const auto a = gen_psd(3, rng), b = gen_psd(3, rng);
  const auto m = direct_sum(a, b);
  const auto pinch = WeightPair::bi_isometric(CMatrix::identity(3), CMatrix(3, 3));
  EXPECT_LT(distance(phi_map(pinch, m).matrix(), m.matrix()), 1e-14);
  const auto half = WeightPair::scalar(0.5, 3);
  const auto mid = 0.5 * (a + b);
  EXPECT_LT(distance(phi_map(half, m).matrix(), direct_sum(mid, mid).matrix()), 1e-14);
  const auto bi = gen_weight_pair(WeightKind::bi_isometric, 3, rng);
  EXPECT_LT(distance(phi_map(bi, HermitianMatrix::identity(6)).matrix(), CMatrix::identity(6)), 1e-12);
  EXPECT_THROW(phi_map(bi, HermitianMatrix::identity(5)), DimensionMismatch);
}

TEST(PhiMap, OutputMajorizedByInput) {
  Rng rng(14);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 4;
    const auto w = gen_weight_pair(static_cast<WeightKind>(k % 3), n, rng);
    const auto m = gen_hermitian(2 * n, rng, {-2.0, 2.0});
    EXPECT_TRUE(majorizes(m, phi_map(w, m)));
  }
}
