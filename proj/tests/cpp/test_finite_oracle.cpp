#include <gtest/gtest.h>

#include "json.hpp"

#include "qs/chain.hpp"
#include "qs/finite_oracle.hpp"

namespace qs {
namespace {

// Reference subgroup generation: smallest subgroup of Z_m containing `seed`,
// closed under x ↦ preimages, computed by plain set iteration.
std::set<long> chain_union_by_sets(long m, long a, long b) {
  auto image = [&](const std::set<long>& s, long k) {
    std::set<long> out;
    for (long x : s) out.insert((k * x) % m);
    return out;
  };
  auto preimage = [&](const std::set<long>& s, long k) {
    std::set<long> out;
    for (long x = 0; x < m; ++x)
      if (s.count((k * x) % m)) out.insert(x);
    return out;
  };
  std::set<long> pos{0}, neg{0}, all{0};
  for (long n = 0; n < 2 * m + 2; ++n) {
    pos = preimage(image(pos, a), b);
    neg = preimage(image(neg, b), a);
    all.insert(pos.begin(), pos.end());
    all.insert(neg.begin(), neg.end());
  }
  long g = m;
  for (long x : all) g = std::gcd(g, x);
  std::set<long> sub;
  for (long x = 0; x < m; x += g) sub.insert(x);
  return sub;
}

TEST(FiniteQuiver, EdgeSetMatchesDefinition) {
  for (long m = 1; m <= 9; ++m)
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        const FiniteQuiver q(m, a, b);
        std::set<std::pair<long, long>> expected;
        for (long x = 0; x < m; ++x)
          for (long y = 0; y < m; ++y)
            if ((a * y - b * x) % m == 0) expected.insert({x, y});
        const std::set<std::pair<long, long>> got(q.edges().begin(), q.edges().end());
        ASSERT_EQ(got, expected);
        ASSERT_EQ(got.size(), q.edges().size());
      }
}

TEST(ConditionLFinite, Examples) {
  EXPECT_FALSE(condition_L_finite(FiniteQuiver(1, 1, 1)));
  EXPECT_TRUE(condition_L_finite(FiniteQuiver(4, 1, 2)));
  EXPECT_FALSE(condition_L_finite(FiniteQuiver(5, 2, 2)));
}

TEST(MinimalFinite, Examples) {
  // Vertex 1 emits no edge when a = 1, b = 2 on Z_4 (1 ≡ 2x has no solution),
  // so {1} is already saturated and hereditary.
  const FiniteQuiver q(4, 1, 2);
  const std::vector<bool> c1 = saturated_hereditary_closure(q, 1);
  EXPECT_EQ(std::count(c1.begin(), c1.end(), true), 1);
  const std::vector<bool> c0 = saturated_hereditary_closure(q, 0);
  EXPECT_EQ(std::count(c0.begin(), c0.end(), true), 4);
  EXPECT_FALSE(minimal_finite(q));
  EXPECT_FALSE(minimal_finite(FiniteQuiver(5, 1, 1)));
  EXPECT_FALSE(minimal_finite(FiniteQuiver(2, 1, 1)));
  EXPECT_TRUE(minimal_finite(FiniteQuiver(1, 1, 1)));
}

TEST(Gamma0Finite, Examples) {
  const Gamma0Result a = gamma0_finite(FiniteQuiver(4, 1, 2));
  EXPECT_TRUE(a.is_everything(4));
  EXPECT_TRUE(a.out_of_theorem_scope);
  const Gamma0Result b = gamma0_finite(FiniteQuiver(5, 2, 2));
  EXPECT_EQ(b.elements, std::vector<long>{0});
  EXPECT_FALSE(b.out_of_theorem_scope);
  const Gamma0Result c = gamma0_finite(FiniteQuiver(6, 2, 3));
  EXPECT_TRUE(c.out_of_theorem_scope);
  EXPECT_FALSE(c.elements.empty());
}

TEST(Gamma0Finite, MatchesSetIteration) {
  for (long m = 1; m <= 16; ++m)
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        const Gamma0Result r = gamma0_finite(FiniteQuiver(m, a, b));
        const std::set<long> expected = chain_union_by_sets(m, a, b);
        ASSERT_EQ(std::set<long>(r.elements.begin(), r.elements.end()), expected) << m << " " << a << " " << b;
        ASSERT_EQ(r.order, static_cast<long>(expected.size()));
      }
}

TEST(VerifyMinimalityTheorem, Examples) {
  const MinimalityReport small = verify_minimality_theorem(12, 12, 2);
  EXPECT_TRUE(small.ok());
  EXPECT_GT(small.subsets_checked, 0u);
  const MinimalityReport one = verify_minimality_theorem(1, 1);
  EXPECT_TRUE(one.ok());
  EXPECT_EQ(one.instances, 1u);
  const FiniteQuiver q(5, 2, 2);
  EXPECT_FALSE(minimal_finite(q));
  EXPECT_FALSE(gamma0_finite(q).is_everything(5));
  const auto j = nlohmann::json::parse(small.to_json());
  EXPECT_TRUE(j.contains("counterexamples"));
}

TEST(VerifyMinimalityTheorem, ThreadCountDoesNotChangeReport) {
  EXPECT_EQ(verify_minimality_theorem(16, 8, 1).to_json(), verify_minimality_theorem(16, 8, 4).to_json());
}

TEST(SaturatedHereditary, DefinitionalAndFormulaAgreeOnAllSubsets) {
  for (long m = 1; m <= 8; ++m)
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        const FiniteQuiver q(m, a, b);
        if (!q.alpha_surjective() || !q.beta_surjective()) continue;
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << m); ++u)
          ASSERT_EQ(is_saturated_hereditary(q, u), satisfies_invariance_formula(q, u));
      }
}

TEST(Density1d, Examples) {
  const Density1dResult a = density_1d(2, 3, 4, mpq_class(1, 50));
  EXPECT_EQ(a.kind, Density1dKind::DenseAtResolution);
  EXPECT_LE(a.gap, mpq_class(1, 81));
  const Density1dResult b = density_1d(2, 2, 6, mpq_class(1, 1000));
  EXPECT_EQ(b.kind, Density1dKind::NotDense);
  EXPECT_EQ(b.gap, mpq_class(1, 2));
  const Density1dResult c = density_1d(1, 1, 3, mpq_class(1, 1000));
  EXPECT_EQ(c.kind, Density1dKind::NotDense);
  EXPECT_EQ(c.order, 1);
}

TEST(Density1d, NeverContradictsChain) {
  for (long f = -6; f <= 6; ++f)
    for (long g = -6; g <= 6; ++g) {
      if (f == 0 || g == 0) continue;
      const DensityStatus s = decide_density(IntMatrix(1, {f}), IntMatrix(1, {g})).status;
      const Density1dResult r = density_1d(f, g, 8, mpq_class(1, 1000));
      if (s == DensityStatus::Dense) ASSERT_NE(r.kind, Density1dKind::NotDense);
      if (s == DensityStatus::NotDense) {
        ASSERT_NE(r.kind, Density1dKind::DenseAtResolution);
        ASSERT_TRUE(r.kind == Density1dKind::NotDense || r.gap > mpq_class(1, 1000));
      }
    }
}

}  // namespace
}  // namespace qs
