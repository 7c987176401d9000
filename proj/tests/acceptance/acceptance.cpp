// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or overruns its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "qs/chain.hpp"
#include "qs/finite_oracle.hpp"
#include "qs/presentation.hpp"
#include "qs/simplicity.hpp"
#include "support/generators.hpp"

namespace {

using namespace qs;
using qs::testing::Rng;
using qs::testing::uniform;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

bool contradicts(SimplicityStatus a, SimplicityStatus b) {
  return a != SimplicityStatus::Unknown && b != SimplicityStatus::Unknown && a != b;
}

bool fired(const SimplicityVerdict& v, const std::string& id, SimplicityStatus concluded) {
  for (const auto& r : v.rules)
    if (r.id == id && r.concluded == concluded) return true;
  return false;
}

Outcome automorphisms() {
  Rng rng(1001);
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    const SimplicityVerdict v = decide(testing::random_unimodular(rng, d), testing::random_unimodular(rng, d));
    if (v.status != SimplicityStatus::NotSimple) ++failures;
  }
  return {failures == 0, "50 unimodular pairs, " + std::to_string(failures) + " not NotSimple"};
}

Outcome dilations() {
  Rng rng(1002);
  int found = 0, failures = 0, dense = 0;
  while (found < 20) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    const IntMatrix f = testing::random_matrix(rng, d, 4);
    if (det(f) == 0 || !is_dilation(f)) continue;
    ++found;
    const IntMatrix g = IntMatrix::identity(d);
    DecideOptions o;
    o.cross_check = false;
    const SimplicityVerdict v = decide(f, g, o);
    const DensityStatus s = decide_density(f, g).status;
    if (v.status != SimplicityStatus::Simple || !fired(v, "R3-dilation", SimplicityStatus::Simple)) ++failures;
    if (s == DensityStatus::NotDense) ++failures;
    if (s == DensityStatus::Dense) ++dense;
  }
  return {failures == 0, "20 dilations, " + std::to_string(dense) + " chain-Dense, " + std::to_string(failures) +
                             " failures"};
}

Outcome triangular() {
  int cases = 0, failures = 0;
  for (long n = 2; n <= 3; ++n)
    for (long a = -4; a <= 4; ++a)
      for (long c = -4; c <= 4; ++c)
        for (long b = -4; b <= 4; ++b) {
          if (a == 0 || c == 0 || std::labs(a) == n || std::labs(c) == n) continue;
          ++cases;
          const IntMatrix g(2, {a, b, 0, c});
          const IntMatrix f = IntMatrix::scalar(2, n);
          DecideOptions o;
          o.cross_check = false;
          const SimplicityVerdict v = decide(f, g, o);
          const bool r4 = triangular_criterion(n, g) && fired(v, "R4-triangular", SimplicityStatus::Simple);
          if (!r4 || v.status != SimplicityStatus::Simple) ++failures;
          if (decide_density(f, g).status == DensityStatus::NotDense) ++failures;
        }
  return {failures == 0, std::to_string(cases) + " triangular pairs, " + std::to_string(failures) + " failures"};
}

Outcome reduction_invariance() {
  Rng rng(1004);
  int contradictions = 0, definite = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 2));
    const IntMatrix f = testing::random_nonsingular(rng, d, 3);
    const IntMatrix g = testing::random_nonsingular(rng, d, 3);
    const IntMatrix h = testing::random_nonsingular(rng, d, 3);
    const auto [rf, rg] = reduce_right(f, g, h);
    const auto [lf, lg] = reduce_left(f, g, h);
    const NormalForm nf = normalize(f, g);
    const SimplicityStatus s[4] = {decide(f, g).status, decide(rf, rg).status, decide(lf, lg).status,
                                   decide(IntMatrix::scalar(d, nf.n), nf.t).status};
    bool all_definite = true;
    for (int a = 0; a < 4; ++a) {
      all_definite = all_definite && s[a] != SimplicityStatus::Unknown;
      for (int b = a + 1; b < 4; ++b)
        if (contradicts(s[a], s[b])) ++contradictions;
    }
    if (all_definite) ++definite;
  }
  return {contradictions == 0, "200 triples, " + std::to_string(definite) + " fully definite, " +
                                   std::to_string(contradictions) + " contradictions"};
}

Outcome finite_sweep() {
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const MinimalityReport r = verify_minimality_theorem(32, 12, jobs);
  return {r.ok(), std::to_string(r.instances) + " surjective instances, " + std::to_string(r.subsets_checked) +
                      " subsets, " + std::to_string(r.counterexamples.size() + r.subset_counterexamples.size() +
                                                    r.kernel_counterexamples.size()) +
                      " counterexamples"};
}

Outcome concordance_1d() {
  int pairs = 0, failures = 0;
  const mpq_class eps(1, 1000);
  for (long f = -6; f <= 6; ++f)
    for (long g = -6; g <= 6; ++g) {
      if (std::labs(f) < 2 || std::labs(g) < 2) continue;
      ++pairs;
      const DensityStatus s = decide_density(IntMatrix(1, {f}), IntMatrix(1, {g})).status;
      const Density1dResult r = density_1d(f, g, 8, eps);
      if (s == DensityStatus::Dense && r.kind == Density1dKind::NotDense) ++failures;
      if (s == DensityStatus::NotDense && r.kind == Density1dKind::DenseAtResolution) ++failures;
    }
  if (decide(IntMatrix(1, {2}), IntMatrix(1, {3})).status != SimplicityStatus::Simple) ++failures;
  for (long a = 2; a <= 6; ++a)
    if (decide(IntMatrix(1, {a}), IntMatrix(1, {a})).status != SimplicityStatus::NotSimple) ++failures;
  return {failures == 0, std::to_string(pairs) + " pairs plus 6 decisions, " + std::to_string(failures) + " failures"};
}

// Pairing check independent of dual_lattice: every annihilator row must be
// integral on every generator of L, and the indices must match.
bool annihilates(const IntegerSublattice& m, const RationalLattice& l) {
  for (const auto& row : m.basis().rows())
    for (const auto& gen : l.basis().rows()) {
      Integer dot = 0;
      for (std::size_t i = 0; i < row.size(); ++i) dot += row[i] * gen[i];
      if (dot % l.denom() != 0) return false;
    }
  return true;
}

Outcome lattice_identities() {
  Rng rng(1007);
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    const RationalLattice l = testing::random_lattice(rng, d);
    const IntegerSublattice m = dual_annihilator(l);
    if (m.index() != l.index()) ++failures;
    if (!annihilates(m, l)) ++failures;
    if (!(dual_lattice(m) == l)) ++failures;
    const IntMatrix f = testing::random_nonsingular(rng, d, 5);
    const IntMatrix g = testing::random_nonsingular(rng, d, 5);
    if (!(annihilator_step_pos(f, g, m) == dual_annihilator(step_pos(f, g, l)))) ++failures;
    if (!(annihilator_step_neg(f, g, m) == dual_annihilator(step_neg(f, g, l)))) ++failures;
  }
  return {failures == 0, "500 lattices, " + std::to_string(failures) + " identity failures"};
}

Outcome presentation_counts() {
  Rng rng(1008);
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    IntVector diag(d);
    Integer product = 1;
    for (auto& a : diag) {
      a = uniform(rng, 1, 4);
      product *= a;
    }
    const IntMatrix g = testing::random_nonsingular(rng, d, 4);
    const bool toeplitz = i % 2 == 1;
    const Presentation p = present(IntMatrix::diagonal(diag), g, toeplitz);
    if (Integer(static_cast<unsigned long>(p.index_set.size())) != product) ++failures;
    if (p.group_count() != (toeplitz ? 3u : 4u)) ++failures;
    if (p.count(RelationKind::Translate) != p.index_set.size()) ++failures;
    if (p.count(RelationKind::Covariance) != d) ++failures;
    if (!(parse_presentation(render(p, PresentationFormat::Json)) == p)) ++failures;
  }
  return {failures == 0, "100 presentations, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "automorphism pairs are not simple", 1.0, automorphisms},
      {2, "dilation rule against the chain", 30.0, dilations},
      {3, "triangular rule against the chain", 60.0, triangular},
      {4, "reduction invariance", 120.0, reduction_invariance},
      {5, "finite minimality sweep and subset lemma", 300.0, finite_sweep},
      {6, "dimension-one concordance", 30.0, concordance_1d},
      {7, "lattice engine identities", 60.0, lattice_identities},
      {8, "presentation counts and JSON round trip", 5.0, presentation_counts},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s; %s; %.3f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : " over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
