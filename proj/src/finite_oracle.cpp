#include "qs/finite_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>

#include "json_support.hpp"
#include "qs/error.hpp"

namespace qs {

namespace {

long mod(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

using Mask = std::uint64_t;

Mask bit(long x) { return Mask{1} << x; }

Mask full_mask(long m) { return m == 64 ? ~Mask{0} : bit(m) - 1; }

// Image and preimage of a subset under x ↦ c·x on Z_m.
Mask image(Mask u, long c, long m) {
  Mask out = 0;
  for (long x = 0; x < m; ++x)
    if (u & bit(x)) out |= bit(mod(c * x, m));
  return out;
}

Mask preimage(Mask u, long c, long m) {
  Mask out = 0;
  for (long x = 0; x < m; ++x)
    if (u & bit(mod(c * x, m))) out |= bit(x);
  return out;
}

std::set<long> step_sets(const std::set<long>& s, long push, long pull, long m) {
  std::set<long> pushed;
  for (long x : s) pushed.insert(mod(push * x, m));
  std::set<long> out;
  for (long y = 0; y < m; ++y)
    if (pushed.count(mod(pull * y, m))) out.insert(y);
  return out;
}

}  // namespace

FiniteQuiver::FiniteQuiver(long m, long a, long b) : m_(m), a_(0), b_(0) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  a_ = mod(a, m);
  b_ = mod(b, m);
  by_source_.resize(static_cast<std::size_t>(m));
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      if (mod(a_ * y - b_ * x, m) == 0) {
        edges_.emplace_back(x, y);
        by_source_[static_cast<std::size_t>(y)].push_back(x);
      }
}

bool FiniteQuiver::alpha_surjective() const { return std::gcd(a_, m_) == 1; }
bool FiniteQuiver::beta_surjective() const { return std::gcd(b_, m_) == 1; }

bool condition_L_finite(const FiniteQuiver& q) {
  // A loop has no exit exactly when each of its vertices is the source of a
  // single edge; those vertices form a partial function y ↦ r(e).
  const long m = q.m();
  std::vector<long> next(static_cast<std::size_t>(m), -1);
  for (long y = 0; y < m; ++y)
    if (q.ranges_from(y).size() == 1) next[static_cast<std::size_t>(y)] = q.ranges_from(y)[0];
  std::vector<int> state(static_cast<std::size_t>(m), 0);  // 0 new, 1 on path, 2 done
  for (long start = 0; start < m; ++start) {
    std::vector<long> path;
    long v = start;
    while (v >= 0 && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      v = next[static_cast<std::size_t>(v)];
    }
    if (v >= 0 && state[static_cast<std::size_t>(v)] == 1) return false;
    for (long p : path) state[static_cast<std::size_t>(p)] = 2;
  }
  return true;
}

std::vector<bool> saturated_hereditary_closure(const FiniteQuiver& q, long v) {
  const long m = q.m();
  std::vector<bool> in(static_cast<std::size_t>(m), false);
  in[static_cast<std::size_t>(mod(v, m))] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (long y = 0; y < m; ++y) {
      const auto& ranges = q.ranges_from(y);
      if (in[static_cast<std::size_t>(y)]) {
        // Hereditary: edges leaving U by their source land in U.
        for (long x : ranges)
          if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = true;
            changed = true;
          }
      } else if (!ranges.empty() &&
                 std::all_of(ranges.begin(), ranges.end(), [&](long x) { return in[static_cast<std::size_t>(x)]; })) {
        // Saturated: a regular vertex whose edges all range in U joins U.
        in[static_cast<std::size_t>(y)] = true;
        changed = true;
      }
    }
  }
  return in;
}

bool minimal_finite(const FiniteQuiver& q) {
  for (long v = 0; v < q.m(); ++v) {
    const auto c = saturated_hereditary_closure(q, v);
    if (!std::all_of(c.begin(), c.end(), [](bool x) { return x; })) return false;
  }
  return true;
}

Gamma0Result gamma0_finite(const FiniteQuiver& q) {
  const long m = q.m(), a = q.a(), b = q.b();
  Gamma0Result out;
  out.out_of_theorem_scope = !q.alpha_surjective() || !q.beta_surjective();
  std::set<long> pos{0}, neg{0};
  std::set<long> all{0};
  for (long n = 1;; ++n) {
    std::set<long> p = step_sets(pos, a, b, m);
    std::set<long> g = step_sets(neg, b, a, m);
    all.insert(p.begin(), p.end());
    all.insert(g.begin(), g.end());
    const bool done = p == pos && g == neg;
    pos = std::move(p);
    neg = std::move(g);
    if (done) {
      out.depth = n - 1;
      break;
    }
  }
  // The subgroup generated by a set of residues is gcd(set, m)·Z_m.
  long step = m;
  for (long x : all) step = std::gcd(step, x);
  out.order = m / step;
  for (long x = 0; x < m; x += step) out.elements.push_back(x);
  return out;
}

bool is_saturated_hereditary(const FiniteQuiver& q, std::uint64_t u) {
  for (const auto& [x, y] : q.edges())
    if ((u & bit(y)) && !(u & bit(x))) return false;
  for (long y = 0; y < q.m(); ++y) {
    if (u & bit(y)) continue;
    const auto& ranges = q.ranges_from(y);
    if (ranges.empty()) continue;
    if (std::all_of(ranges.begin(), ranges.end(), [&](long x) { return (u & bit(x)) != 0; })) return false;
  }
  return true;
}

bool satisfies_invariance_formula(const FiniteQuiver& q, std::uint64_t u) {
  const long m = q.m(), a = q.a(), b = q.b();
  return preimage(image(u, b, m), a, m) == u && preimage(image(u, a, m), b, m) == u;
}

MinimalityReport verify_minimality_theorem(long m_max, long subset_m_max, unsigned jobs) {
  if (m_max < 1 || m_max > 64) throw Error(ErrorCode::InvalidArgument, "m_max must lie in [1, 64]");
  if (subset_m_max < 0 || subset_m_max > 20) throw Error(ErrorCode::InvalidArgument, "subset bound must lie in [0, 20]");
  MinimalityReport report;
  report.m_max = m_max;
  report.subset_m_max = std::min(subset_m_max, m_max);
  std::mutex lock;
  std::atomic<long> next_m{1};

  auto worker = [&] {
    for (long m = next_m++; m <= m_max; m = next_m++) {
      MinimalityReport local;
      for (long a = 0; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        for (long b = 0; b < m; ++b) {
          if (std::gcd(b, m) != 1) continue;
          const FiniteQuiver q(m, a, b);
          ++local.instances;
          const bool full = gamma0_finite(q).is_everything(m);
          const bool minimal = minimal_finite(q);
          if (full != minimal) local.counterexamples.push_back({m, a, b, full, minimal});
          if (m > report.subset_m_max) continue;
          const Mask ker_a = preimage(bit(0), a, m), ker_b = preimage(bit(0), b, m);
          for (Mask u = 0; u <= full_mask(m); ++u) {
            ++local.subsets_checked;
            const bool def = is_saturated_hereditary(q, u);
            const bool formula = satisfies_invariance_formula(q, u);
            if (def != formula) local.subset_counterexamples.push_back({m, a, b, u, def, formula});
            if (!def) continue;
            // U is a union of cosets of both kernels.
            for (long x = 0; x < m; ++x) {
              if (!(u & bit(x))) continue;
              for (long k = 0; k < m; ++k)
                if (((ker_a | ker_b) & bit(k)) && !(u & bit(mod(x + k, m)))) {
                  local.kernel_counterexamples.push_back({m, a, b, u});
                  x = m;
                  break;
                }
            }
          }
        }
      }
      std::lock_guard<std::mutex> guard(lock);
      report.instances += local.instances;
      report.subsets_checked += local.subsets_checked;
      for (auto& c : local.counterexamples) report.counterexamples.push_back(c);
      for (auto& c : local.subset_counterexamples) report.subset_counterexamples.push_back(c);
      for (auto& c : local.kernel_counterexamples) report.kernel_counterexamples.push_back(c);
    }
  };
  const unsigned n = std::max(1u, jobs);
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  auto by_instance = [](const auto& x, const auto& y) {
    return std::tie(x.m, x.a, x.b) < std::tie(y.m, y.a, y.b);
  };
  std::sort(report.counterexamples.begin(), report.counterexamples.end(), by_instance);
  std::stable_sort(report.subset_counterexamples.begin(), report.subset_counterexamples.end(), by_instance);
  std::stable_sort(report.kernel_counterexamples.begin(), report.kernel_counterexamples.end(), by_instance);
  return report;
}

std::string MinimalityReport::to_json() const {
  detail::Json j;
  j["note"] = "the density/minimality equivalence is proved for compact metrizable groups; "
              "its use on finite cyclic groups is an extrapolation checked here";
  j["m_max"] = m_max;
  j["subset_m_max"] = subset_m_max;
  j["instances"] = instances;
  j["subsets_checked"] = subsets_checked;
  detail::Json ce = detail::Json::array();
  for (const auto& c : counterexamples)
    ce.push_back({{"m", c.m}, {"a", c.a}, {"b", c.b}, {"gamma0_full", c.gamma0_full}, {"minimal", c.minimal}});
  j["counterexamples"] = ce;
  detail::Json cc = detail::Json::array();
  for (const auto& c : subset_counterexamples)
    cc.push_back({{"m", c.m}, {"a", c.a}, {"b", c.b}, {"subset", c.subset}, {"definitional", c.definitional},
                  {"formula", c.formula}});
  j["subset_counterexamples"] = cc;
  detail::Json kc = detail::Json::array();
  for (const auto& c : kernel_counterexamples) kc.push_back({{"m", c.m}, {"a", c.a}, {"b", c.b}, {"subset", c.subset}});
  j["kernel_counterexamples"] = kc;
  j["ok"] = ok();
  return j.dump();
}

std::string_view to_string(Density1dKind k) {
  switch (k) {
    case Density1dKind::DenseAtResolution: return "dense_at_resolution";
    case Density1dKind::NotDense: return "not_dense";
    case Density1dKind::Gap: return "gap";
  }
  return "gap";
}

Density1dResult density_1d(long f, long g, long depth, const mpq_class& epsilon) {
  if (f == 0 || g == 0) throw Error(ErrorCode::SingularMatrix, "f and g must be nonzero");
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

  // Points of T as canonical fractions in [0, 1).
  auto reduce = [](mpq_class x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    x -= fl;
    return x;
  };
  // β⁻¹(α(S)) with α(x) = push·x and β(y) = pull·y.
  auto step = [&](const std::set<mpq_class>& s, long push, long pull) {
    std::set<mpq_class> pushed;
    for (const auto& x : s) pushed.insert(reduce(x * push));
    std::set<mpq_class> out;
    const long n = pull < 0 ? -pull : pull;
    for (const auto& t : pushed)
      for (long j = 0; j < n; ++j) out.insert(reduce((t + j) / mpq_class(pull)));
    return out;
  };
  auto result_for = [](const std::set<mpq_class>& pts, Density1dResult r) {
    // Largest gap between consecutive points, wrapping around at 1.
    std::vector<mpq_class> sorted(pts.begin(), pts.end());
    mpq_class best = sorted.front() + 1 - sorted.back();
    for (std::size_t i = 1; i < sorted.size(); ++i) best = std::max(best, mpq_class(sorted[i] - sorted[i - 1]));
    r.gap = best;
    r.order = static_cast<unsigned long>(sorted.size());
    return r;
  };
  // The subgroup generated by finitely many fractions is (1/D)Z/Z, D the lcm of denominators.
  auto generated = [](const std::set<mpq_class>& pts) {
    mpz_class den = 1;
    for (const auto& x : pts) den = lcm(den, x.get_den());
    return den;
  };

  std::set<mpq_class> pos{mpq_class(0)}, neg{mpq_class(0)}, all{mpq_class(0)};
  Density1dResult r;
  for (long n = 1; n <= depth; ++n) {
    std::set<mpq_class> p = step(pos, f, g);
    std::set<mpq_class> q = step(neg, g, f);
    const bool stable = p == pos && q == neg;
    pos = std::move(p);
    neg = std::move(q);
    all.insert(pos.begin(), pos.end());
    all.insert(neg.begin(), neg.end());
    const mpz_class den = generated(all);
    r.depth_reached = n;
    if (den <= (1 << 20)) {
      std::set<mpq_class> group;
      for (mpz_class k = 0; k < den; ++k) {
        mpq_class x(k, den);
        x.canonicalize();
        group.insert(x);
      }
      r = result_for(group, r);
    } else {
      r.gap = mpq_class(1, den);
      r.order = den;
    }
    if (stable) {
      r.kind = Density1dKind::NotDense;
      return r;
    }
    if (r.gap < epsilon) {
      r.kind = Density1dKind::DenseAtResolution;
      return r;
    }
  }
  r.kind = Density1dKind::Gap;
  return r;
}


}  // namespace qs
