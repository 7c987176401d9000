#include <gtest/gtest.h>

#include "qs/chain.hpp"
#include "qs/error.hpp"
#include "qs/finite_oracle.hpp"
#include "support/generators.hpp"

namespace qs {
namespace {

using testing::Rng;

IntMatrix s1(long v) { return IntMatrix(1, {v}); }
RationalLattice frac(long den) { return RationalLattice::from_kernel(s1(den)); }
IntegerSublattice multiples(long k) { return IntegerSublattice::from_rows({{Integer(k)}}, 1); }

TEST(StepPos, Examples) {
  EXPECT_EQ(step_pos(s1(2), s1(3), RationalLattice::integers(1)), frac(3));
  EXPECT_EQ(step_pos(s1(2), s1(3), frac(3)), frac(9));
  EXPECT_EQ(step_pos(s1(2), s1(2), frac(2)), frac(2));
}

TEST(StepNeg, Examples) {
  EXPECT_EQ(step_neg(s1(2), s1(3), RationalLattice::integers(1)), frac(2));
  EXPECT_EQ(step_neg(s1(2), s1(1), frac(2)), frac(4));
  EXPECT_EQ(step_neg(s1(1), s1(1), RationalLattice::integers(1)), RationalLattice::integers(1));
}

TEST(AnnihilatorStep, Examples) {
  const IntegerSublattice z = IntegerSublattice::whole(1);
  EXPECT_EQ(annihilator_step_pos(s1(2), s1(1), z), z);
  EXPECT_EQ(annihilator_step_pos(s1(2), s1(1), z), dual_annihilator(step_pos(s1(2), s1(1), RationalLattice::integers(1))));
  EXPECT_EQ(annihilator_step_pos(s1(1), s1(2), z), multiples(2));
  EXPECT_EQ(annihilator_step_pos(s1(1), s1(1), z), z);
}

TEST(AnnihilatorStep, DualRecursionMatchesPrimal) {
  Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    const IntMatrix f = testing::random_nonsingular(rng, d, 5);
    const IntMatrix g = testing::random_nonsingular(rng, d, 5);
    const RationalLattice l = testing::random_lattice(rng, d, 3);
    const IntegerSublattice m = dual_annihilator(l);
    ASSERT_EQ(annihilator_step_pos(f, g, m), dual_annihilator(step_pos(f, g, l)));
    ASSERT_EQ(annihilator_step_neg(f, g, m), dual_annihilator(step_neg(f, g, l)));
  }
}

TEST(ComputeChain, TwoThree) {
  const ChainTrace t = compute_chain(s1(2), s1(3), 2);
  ASSERT_EQ(t.pos.size(), 3u);
  EXPECT_EQ(t.pos[0], RationalLattice::integers(1));
  EXPECT_EQ(t.pos[1], frac(3));
  EXPECT_EQ(t.pos[2], frac(9));
  EXPECT_EQ(t.neg[1], frac(2));
  EXPECT_EQ(t.neg[2], frac(4));
  EXPECT_EQ(t.indices, (std::vector<Integer>{1, 6, 36}));
}

TEST(ComputeChain, AutomorphismsGiveTrivialChain) {
  const ChainTrace t = compute_chain(s1(1), s1(1), 3);
  for (const auto& l : t.joins) EXPECT_EQ(l, RationalLattice::integers(1));
  for (const auto& a : t.annihilators) EXPECT_EQ(a, IntegerSublattice::whole(1));
}

TEST(ComputeChain, FixedPointForEqualMaps) {
  const ChainTrace t = compute_chain(s1(2), s1(2), 3);
  for (std::size_t j = 1; j <= 3; ++j) {
    EXPECT_EQ(t.joins[j], frac(2));
    EXPECT_EQ(t.annihilators[j], multiples(2));
  }
}

TEST(ComputeChain, SingularThrows) { EXPECT_THROW(compute_chain(s1(0), s1(3), 2), Error); }

TEST(ComputeChain, StructuralInvariants) {
  Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    const IntMatrix f = testing::random_nonsingular(rng, d, 3);
    const IntMatrix g = testing::random_nonsingular(rng, d, 3);
    const ChainTrace t = compute_chain(f, g, 4);
    ASSERT_EQ(t.pos[0], RationalLattice::integers(d));
    ASSERT_EQ(t.neg[0], RationalLattice::integers(d));
    ASSERT_EQ(t.pos[1], RationalLattice::from_kernel(g));
    ASSERT_EQ(t.neg[1], RationalLattice::from_kernel(f));
    for (std::size_t n = 0; n < 4; ++n) {
      ASSERT_TRUE(is_subset(t.pos[n], t.pos[n + 1]));
      ASSERT_TRUE(is_subset(t.neg[n], t.neg[n + 1]));
      ASSERT_TRUE(is_subset(t.joins[n], t.joins[n + 1]));
      ASSERT_TRUE(is_subset(t.annihilators[n + 1], t.annihilators[n]));
      ASSERT_EQ(t.indices[n + 1] % t.indices[n], 0);
    }
    for (std::size_t n = 0; n <= 4; ++n) {
      ASSERT_EQ(t.joins[n], join(t.pos[n], t.neg[n]));
      ASSERT_EQ(t.annihilators[n], dual_annihilator(t.joins[n]));
      ASSERT_EQ(t.indices[n], t.joins[n].index());
    }
  }
}

TEST(DecideDensity, WorkedExamples) {
  const DensityVerdict two_three = decide_density(s1(2), s1(3));
  EXPECT_EQ(two_three.status, DensityStatus::Dense);

  for (std::size_t d = 1; d <= 3; ++d) {
    const DensityVerdict id = decide_density(IntMatrix::identity(d), IntMatrix::identity(d));
    ASSERT_EQ(id.status, DensityStatus::NotDense);
    ASSERT_TRUE(id.witness);
    Integer norm = 0;
    for (const auto& x : *id.witness) norm += abs(x);
    EXPECT_EQ(norm, 1);
  }

  const DensityVerdict two_two = decide_density(s1(2), s1(2));
  ASSERT_EQ(two_two.status, DensityStatus::NotDense);
  EXPECT_EQ(*two_two.witness, IntVector{Integer(2)});
  EXPECT_EQ(two_two.evidence, DensityEvidence::Stabilized);
}

TEST(DecideDensity, WithoutAlgebraicCertificateNeverDense) {
  DensityOptions o;
  o.algebraic = false;
  EXPECT_NE(decide_density(s1(2), s1(3), o).status, DensityStatus::Dense);
  EXPECT_EQ(decide_density(s1(2), s1(2), o).status, DensityStatus::NotDense);
}

// A NotDense witness must lie in every annihilator of the chain, and for a
// stabilization witness both dual steps must keep the stabilized lattice.
TEST(DecideDensity, NotDenseWitnessesAreSound) {
  Rng rng(33);
  int not_dense = 0;
  for (int i = 0; i < 120; ++i) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
    const IntMatrix f = testing::random_nonsingular(rng, d, 3);
    const IntMatrix g = testing::random_nonsingular(rng, d, 3);
    const DensityVerdict v = decide_density(f, g);
    if (v.status != DensityStatus::NotDense) {
      ASSERT_FALSE(v.witness);
      continue;
    }
    ++not_dense;
    ASSERT_TRUE(v.witness);
    const ChainTrace t = compute_chain(f, g, std::max<std::size_t>(v.depth_used, 1) + 2);
    for (const auto& a : t.annihilators) ASSERT_TRUE(a.contains(*v.witness)) << f.to_string() << g.to_string();
    if (v.evidence == DensityEvidence::Stabilized) {
      const IntegerSublattice& a = v.annihilator_at_depth;
      ASSERT_TRUE(is_subset(annihilator_step_pos(f, g, a), a));
      ASSERT_TRUE(is_subset(annihilator_step_neg(f, g, a), a));
    }
  }
  EXPECT_GT(not_dense, 0);
}

TEST(DecideDensity, SymmetricInArguments) {
  Rng rng(34);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
    const IntMatrix f = testing::random_nonsingular(rng, d, 3);
    const IntMatrix g = testing::random_nonsingular(rng, d, 3);
    const DensityStatus a = decide_density(f, g).status, b = decide_density(g, f).status;
    if (a != DensityStatus::Unknown && b != DensityStatus::Unknown) ASSERT_EQ(a, b);
  }
}

TEST(DecideDensity, AgreesWithFiniteDensityOracleInDimensionOne) {
  const mpq_class eps(1, 1000);
  for (long f = -6; f <= 6; ++f)
    for (long g = -6; g <= 6; ++g) {
      if (f == 0 || g == 0) continue;
      const DensityVerdict v = decide_density(s1(f), s1(g));
      const Density1dResult r = density_1d(f, g, 8, eps);
      if (v.status == DensityStatus::Dense) ASSERT_NE(r.kind, Density1dKind::NotDense) << f << "," << g;
      if (v.status == DensityStatus::NotDense) ASSERT_NE(r.kind, Density1dKind::DenseAtResolution) << f << "," << g;
    }
}

// In dimension one Γ₀ is dense exactly when |f| ≠ |g|. Otherwise x ↦ ±x
// makes the chain constant from the first step on.
TEST(DecideDensity, DimensionOneClosedForm) {
  for (long f = -8; f <= 8; ++f)
    for (long g = -8; g <= 8; ++g) {
      if (f == 0 || g == 0) continue;
      const DensityVerdict v = decide_density(s1(f), s1(g));
      const bool dense = std::abs(f) != std::abs(g);
      ASSERT_EQ(v.status, dense ? DensityStatus::Dense : DensityStatus::NotDense) << f << "," << g;
    }
}

TEST(TransferCharpoly, DimensionOne) {
  const poly::RatPoly p = transfer_charpoly(s1(2), s1(3));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], mpq_class(-2, 3));
  EXPECT_EQ(p[1], 1);
}

TEST(DecideDensity, OrbitCycleForSplitDiagonal) {
  const DensityVerdict v = decide_density(IntMatrix::diagonal({2, 1}), IntMatrix::diagonal({3, 1}));
  ASSERT_EQ(v.status, DensityStatus::NotDense);
  EXPECT_EQ(*v.witness, (IntVector{Integer(0), Integer(1)}));
}

}  // namespace
}  // namespace qs
