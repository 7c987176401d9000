#include "qs/chain.hpp"

#include <algorithm>
#include <unordered_set>

#include "qs/error.hpp"

namespace qs {

namespace {

Integer require_nonsingular(const IntMatrix& m, const char* what) {
  Integer d = det(m);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, std::string(what) + ": matrix is singular");
  return d;
}

void require_pair(const IntMatrix& f, const IntMatrix& g) {
  if (f.dim() != g.dim() || f.dim() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "F and G must be square of the same positive dimension");
  }
  require_nonsingular(f, "F");
  require_nonsingular(g, "G");
}

// Gᵀ·(F⁻ᵀ·M ∩ Z^d) with rows as characters: F⁻ᵀm is the row m·adj(F)/det F,
// and Gᵀx is the row x·G.
IntegerSublattice annihilator_step(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& m) {
  const std::size_t n = m.dim();
  const Integer df = det(f);
  const Integer c = abs(df);
  IntMatrix adj = adjugate(f);
  if (df < 0) adj = -adj;
  // c·F⁻ᵀM is integral; intersect it with c·Z^d and divide by c.
  std::vector<IntVector> scaled;
  for (const auto& row : m.basis().rows()) scaled.push_back(row * adj);
  const IntegerSublattice image = IntegerSublattice::from_rows(scaled, n);
  const IntegerSublattice cz = IntegerSublattice::from_rows(IntMatrix::scalar(n, c).rows(), n);
  std::vector<IntVector> rows;
  for (auto row : intersect(image, cz).basis().rows()) {
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    rows.push_back(row * g);
  }
  return IntegerSublattice::from_rows(rows, n);
}

void extend(ChainTrace& t) {
  const RationalLattice p = step_pos(t.f, t.g, t.pos.back());
  const RationalLattice q = step_neg(t.f, t.g, t.neg.back());
  RationalLattice j = join(p, q);
  t.annihilators.push_back(dual_annihilator(j));
  t.indices.push_back(j.index());
  t.pos.push_back(p);
  t.neg.push_back(q);
  t.joins.push_back(std::move(j));
  ++t.depth;
}

ChainTrace start_chain(const IntMatrix& f, const IntMatrix& g) {
  ChainTrace t;
  t.f = f;
  t.g = g;
  const std::size_t n = f.dim();
  t.pos.push_back(RationalLattice::integers(n));
  t.neg.push_back(RationalLattice::integers(n));
  t.joins.push_back(RationalLattice::integers(n));
  t.annihilators.push_back(IntegerSublattice::whole(n));
  t.indices.push_back(Integer(1));
  return t;
}

// Exact rational linear algebra for the invariant-lattice witness.
using RatVector = std::vector<mpq_class>;
using RatMatrix = std::vector<RatVector>;

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size();
  RatMatrix out(n, RatVector(n, mpq_class(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

RatVector rat_apply(const RatMatrix& a, const RatVector& v) {
  RatVector out(v.size(), mpq_class(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

// Inverse transpose of an integer matrix, as rationals.
RatMatrix inverse_transpose(const IntMatrix& m) {
  const Integer d = det(m);
  const IntMatrix adj_t = adjugate(m).transpose();
  const std::size_t n = m.dim();
  RatMatrix out(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out[i][j] = mpq_class(adj_t(i, j), d);
      out[i][j].canonicalize();
    }
  return out;
}

RatMatrix to_rat(const IntMatrix& m) {
  const std::size_t n = m.dim();
  RatMatrix out(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m(i, j);
  return out;
}

// One nonzero vector of the right kernel of a singular rational matrix.
RatVector kernel_vector(RatMatrix a) {
  const std::size_t n = a.size();
  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    const mpq_class lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class factor = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= factor * a[r][j];
    }
    pivot_col_of_row.push_back(static_cast<long>(c));
    is_pivot[c] = true;
    ++r;
  }
  std::size_t free = 0;
  while (free < n && is_pivot[free]) ++free;
  if (free == n) throw Error(ErrorCode::InternalError, "expected a singular matrix");
  RatVector v(n, mpq_class(0));
  v[free] = 1;
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) v[pivot_col_of_row[i]] = -a[i][free];
  return v;
}

Integer common_denominator(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  return l;
}

// A nonzero character all of whose forward and backward orbits stay inside
// a finitely generated T^{±1}-invariant group on which G⁻ᵀ and F⁻ᵀ are
// integral. Here p is monic integral with p(0) = ±1, so for w in ker p(T) the
// span of w, Tw, ..., T^{deg p - 1}w is closed under T and T⁻¹.
IntVector invariant_lattice_witness(const IntMatrix& f, const IntMatrix& g, const poly::IntPoly& p) {
  const std::size_t n = f.dim();
  const RatMatrix gi = inverse_transpose(g);
  const RatMatrix fi = inverse_transpose(f);
  const RatMatrix t = rat_mul(to_rat(f.transpose()), gi);

  // p(T) by Horner's rule.
  RatMatrix pt(n, RatVector(n, mpq_class(0)));
  for (std::size_t k = p.size(); k-- > 0;) {
    pt = rat_mul(pt, t);
    for (std::size_t i = 0; i < n; ++i) pt[i][i] += p[k];
  }
  RatVector w = kernel_vector(pt);
  const Integer den = common_denominator(w);
  for (auto& x : w) x *= den;

  Integer c = 1;
  RatVector gen = w;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    c = lcm(c, common_denominator(gen));
    c = lcm(c, common_denominator(rat_apply(gi, gen)));
    c = lcm(c, common_denominator(rat_apply(fi, gen)));
    gen = rat_apply(t, gen);
  }
  IntVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = mpq_class(w[i] * c).get_num();
  return out;
}

enum class Orbit { Cycle, Exits, Undecided };

std::string key_of(const IntVector& v) {
  std::string k;
  for (const auto& x : v) {
    k += x.get_str(16);
    k += ',';
  }
  return k;
}

// Follows m -> (m·adj(a)/det a)·b while the division is exact.
Orbit follow_orbit(const IntMatrix& a_adj, const Integer& a_det, const IntMatrix& b, IntVector m,
                   const Integer& norm_cap, std::size_t step_cap, std::size_t& budget) {
  std::unordered_set<std::string> seen;
  seen.insert(key_of(m));
  for (std::size_t step = 0; step < step_cap; ++step) {
    if (budget == 0) return Orbit::Undecided;
    --budget;
    IntVector u = m * a_adj;
    for (auto& x : u) {
      if (!mpz_divisible_p(x.get_mpz_t(), a_det.get_mpz_t())) return Orbit::Exits;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), a_det.get_mpz_t());
    }
    m = u * b;
    for (const auto& x : m)
      if (abs(x) > norm_cap) return Orbit::Undecided;
    if (!seen.insert(key_of(m)).second) return Orbit::Cycle;
  }
  return Orbit::Undecided;
}

Integer norm_sq(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

Integer norm_inf(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s = std::max(s, Integer(abs(x)));
  return s;
}

// Nonzero points m = y·H of the HNF lattice with radius/2 < ||m||_∞ <= radius,
// one of each ±m pair. Returns false if the node budget ran out.
bool box_points(const IntMatrix& h, const Integer& radius, std::size_t& budget, std::vector<IntVector>& out) {
  const std::size_t n = h.dim();
  const Integer inner = radius / 2;
  IntVector partial(n, Integer(0));
  IntVector m(n, Integer(0));
  bool ok = true;
  auto visit = [&](auto&& self, std::size_t c) -> void {
    if (!ok) return;
    if (c == n) {
      bool nonzero = false;
      for (const auto& x : m) nonzero = nonzero || x != 0;
      if (!nonzero || norm_inf(m) <= inner) return;
      // Keep the representative whose first nonzero coordinate is positive.
      for (const auto& x : m) {
        if (x == 0) continue;
        if (x > 0) out.push_back(m);
        break;
      }
      return;
    }
    const Integer& piv = h(c, c);
    const Integer s = partial[c];
    Integer lo, hi, tmp = -radius - s;
    mpz_cdiv_q(lo.get_mpz_t(), tmp.get_mpz_t(), piv.get_mpz_t());
    tmp = radius - s;
    mpz_fdiv_q(hi.get_mpz_t(), tmp.get_mpz_t(), piv.get_mpz_t());
    for (Integer y = lo; y <= hi; ++y) {
      if (budget == 0) {
        ok = false;
        return;
      }
      --budget;
      m[c] = s + y * piv;
      for (std::size_t j = c + 1; j < n; ++j) partial[j] += y * h(c, j);
      self(self, c + 1);
      for (std::size_t j = c + 1; j < n; ++j) partial[j] -= y * h(c, j);
      if (!ok) return;
    }
  };
  visit(visit, 0);
  return ok;
}

struct OrbitSearch {
  std::optional<IntVector> witness;
  bool complete = false;
};

// Bounded search for a character in every A_j: both orbits must cycle.
OrbitSearch search_orbits(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& a,
                          const DensityOptions& options, std::size_t depth) {
  OrbitSearch result;
  const IntMatrix adj_f = adjugate(f), adj_g = adjugate(g);
  const Integer det_f = det(f), det_g = det(g);
  Integer growth = std::max(Integer(abs(det_f)), Integer(abs(det_g)));
  Integer cap;
  mpz_pow_ui(cap.get_mpz_t(), growth.get_mpz_t(), static_cast<unsigned long>(std::max<std::size_t>(depth, 1)));
  cap *= options.norm_bound;
  std::size_t budget = options.orbit_budget;
  bool all_decided = true;
  for (Integer radius = 1;; radius *= 2) {
    if (radius > options.norm_bound) radius = options.norm_bound;
    std::vector<IntVector> points;
    if (!box_points(a.basis(), radius, budget, points)) return result;
    std::sort(points.begin(), points.end(),
              [](const IntVector& x, const IntVector& y) { return norm_sq(x) < norm_sq(y); });
    for (const auto& m : points) {
      const Orbit forward = follow_orbit(adj_g, det_g, f, m, cap, options.orbit_step_cap, budget);
      if (forward == Orbit::Exits) continue;
      const Orbit backward = follow_orbit(adj_f, det_f, g, m, cap, options.orbit_step_cap, budget);
      if (forward == Orbit::Cycle && backward == Orbit::Cycle) {
        result.witness = m;
        return result;
      }
      if (backward != Orbit::Exits) all_decided = false;
      if (budget == 0) return result;
    }
    if (radius >= options.norm_bound) break;
  }
  result.complete = all_decided;
  return result;
}

bool in_every_annihilator(const ChainTrace& t, const IntVector& m) {
  for (const auto& a : t.annihilators)
    if (!a.contains(m)) return false;
  return true;
}

}  // namespace

RationalLattice step_pos(const IntMatrix& f, const IntMatrix& g, const RationalLattice& l) {
  return preimage(g, pushforward(f, l));
}

RationalLattice step_neg(const IntMatrix& f, const IntMatrix& g, const RationalLattice& l) {
  return preimage(f, pushforward(g, l));
}

IntegerSublattice annihilator_step_pos(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& m) {
  require_pair(f, g);
  if (m.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "annihilator dimension differs from matrices");
  return annihilator_step(f, g, m);
}

IntegerSublattice annihilator_step_neg(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& m) {
  require_pair(f, g);
  if (m.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "annihilator dimension differs from matrices");
  return annihilator_step(g, f, m);
}

ChainTrace compute_chain(const IntMatrix& f, const IntMatrix& g, std::size_t depth) {
  require_pair(f, g);
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "chain depth must be at least 1");
  ChainTrace t = start_chain(f, g);
  while (t.depth < depth) extend(t);
  return t;
}

std::string_view to_string(DensityStatus s) {
  switch (s) {
    case DensityStatus::Dense: return "Dense";
    case DensityStatus::NotDense: return "NotDense";
    case DensityStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(DensityEvidence e) {
  switch (e) {
    case DensityEvidence::None: return "none";
    case DensityEvidence::Stabilized: return "stabilized";
    case DensityEvidence::OrbitCycle: return "orbit-cycle";
    case DensityEvidence::InvariantLattice: return "invariant-lattice";
    case DensityEvidence::NoUnitFactor: return "no-unit-factor";
  }
  return "none";
}

poly::RatPoly transfer_charpoly(const IntMatrix& f, const IntMatrix& g) {
  require_pair(f, g);
  // T = Fᵀ·adj(G)ᵀ / D, so chi_T(x) = D^{-d}·chi_B(D·x) with B = Fᵀ·adj(G)ᵀ.
  const Integer d = det(g);
  const poly::IntPoly chi_b = poly::charpoly(f.transpose() * adjugate(g).transpose());
  const std::size_t n = f.dim();
  poly::RatPoly out(chi_b.size());
  for (std::size_t i = 0; i < chi_b.size(); ++i) {
    Integer scale;
    if (i >= n) {
      mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(i - n));
      out[i] = mpq_class(chi_b[i] * scale);
    } else {
      mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(n - i));
      out[i] = mpq_class(chi_b[i], scale);
      out[i].canonicalize();
    }
  }
  return out;
}

DensityVerdict decide_density(const IntMatrix& f, const IntMatrix& g, const DensityOptions& options) {
  require_pair(f, g);
  if (options.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 1");
  if (options.norm_bound < 1) throw Error(ErrorCode::InvalidArgument, "norm_bound must be positive");

  DensityVerdict v;
  v.norm_bound = options.norm_bound;
  ChainTrace t = start_chain(f, g);

  // Phase 1: the joins reach a lattice that both one-sided steps keep.
  for (std::size_t j = 0; j < options.max_depth; ++j) {
    while (t.depth < j + 1) extend(t);
    const RationalLattice& lam = t.joins[j];
    const IntegerSublattice& ann = t.annihilators[j];
    const bool primal = t.joins[j + 1] == lam && is_subset(step_pos(f, g, lam), lam) &&
                        is_subset(step_neg(f, g, lam), lam);
    const bool dual = t.annihilators[j + 1] == ann && is_subset(ann, annihilator_step_pos(f, g, ann)) &&
                      is_subset(ann, annihilator_step_neg(f, g, ann));
    if (primal != dual) throw Error(ErrorCode::InternalError, "primal and dual stabilization tests disagree");
    if (primal) {
      v.status = DensityStatus::NotDense;
      v.evidence = DensityEvidence::Stabilized;
      v.depth_used = j;
      v.annihilator_at_depth = ann;
      v.witness = ann.shortest_vector();
      v.shortest_length_sq = norm_sq(*v.witness);
      v.reason = "annihilator chain stabilized at depth " + std::to_string(j) + " with index " +
                 t.indices[j].get_str();
      return v;
    }
  }

  v.depth_used = t.depth;
  v.annihilator_at_depth = t.annihilators.back();
  v.shortest_length_sq = norm_sq(v.annihilator_at_depth.shortest_vector());

  const poly::RatPoly chi = transfer_charpoly(f, g);
  {
    poly::RatPoly scaled = chi;
    Integer l = 1;
    for (const auto& c : scaled) l = lcm(l, c.get_den());
    v.transfer_charpoly.reserve(scaled.size());
    Integer content = 0;
    for (const auto& c : scaled) {
      mpq_class x = c * l;
      v.transfer_charpoly.push_back(x.get_num());
      content = gcd(content, x.get_num());
    }
    if (content > 1)
      for (auto& c : v.transfer_charpoly) c /= content;
  }

  std::optional<poly::IntPoly> unit;
  if (options.algebraic) {
    unit = poly::find_unit_factor(chi);
    v.unit_factor = unit;
    if (!unit) {
      v.status = DensityStatus::Dense;
      v.evidence = DensityEvidence::NoUnitFactor;
      v.reason = "characteristic polynomial of the character transfer map has no monic integer factor with "
                 "constant term ±1, so no nonzero character annihilates every approximant";
      return v;
    }
  }

  // Phase 2: a short character with both orbits cycling.
  const OrbitSearch search = search_orbits(f, g, v.annihilator_at_depth, options, t.depth);
  v.orbit_search_complete = search.complete;
  if (search.witness) {
    if (!in_every_annihilator(t, *search.witness))
      throw Error(ErrorCode::InternalError, "orbit witness is missing from a computed annihilator");
    v.status = DensityStatus::NotDense;
    v.evidence = DensityEvidence::OrbitCycle;
    v.witness = search.witness;
    v.reason = "character " + to_string(*search.witness) + " has cycling forward and backward orbits";
    return v;
  }

  if (unit) {
    IntVector w = invariant_lattice_witness(f, g, *unit);
    if (!in_every_annihilator(t, w))
      throw Error(ErrorCode::InternalError, "invariant-lattice witness is missing from a computed annihilator");
    v.status = DensityStatus::NotDense;
    v.evidence = DensityEvidence::InvariantLattice;
    v.witness = std::move(w);
    v.reason = "unit factor " + poly::to_string(*unit) + " of the characteristic polynomial gives an invariant "
               "character lattice";
    return v;
  }

  v.status = DensityStatus::Unknown;
  v.reason = "no stabilization within depth " + std::to_string(t.depth) + " and no cycling character of norm <= " +
             options.norm_bound.get_str();
  return v;
}

}  // namespace qs
