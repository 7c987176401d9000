#include "qs/lattice.hpp"

#include <algorithm>
#include <functional>

#include "qs/error.hpp"

namespace qs {

namespace {

void require_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "lattice dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Integer require_nonsingular(const IntMatrix& m, const char* what) {
  Integer d = det(m);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, std::string(what) + " requires a nonsingular matrix");
  return d;
}

// Solves y·h = v for upper-triangular h with positive pivots; nullopt if y is not integral.
std::optional<IntVector> solve_upper(const IntMatrix& h, const IntVector& v) {
  const std::size_t n = h.dim();
  IntVector y(n);
  for (std::size_t c = 0; c < n; ++c) {
    Integer residual = v[c];
    for (std::size_t i = 0; i < c; ++i) residual -= y[i] * h(i, c);
    if (!mpz_divisible_p(residual.get_mpz_t(), h(c, c).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[c].get_mpz_t(), residual.get_mpz_t(), h(c, c).get_mpz_t());
  }
  return y;
}

std::vector<IntVector> times(const std::vector<IntVector>& rows, const IntMatrix& m) {
  std::vector<IntVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r * m);
  return out;
}

// |det| of some dim×dim nonsingular selection of rows; the lattice spanned
// by all rows then contains that multiple of Z^dim.
Integer lattice_modulus(const std::vector<IntVector>& rows, std::size_t dim) {
  std::vector<std::vector<mpq_class>> echelon;
  std::vector<IntVector> chosen;
  for (const auto& r : rows) {
    std::vector<mpq_class> v(r.begin(), r.end());
    for (const auto& e : echelon) {
      std::size_t lead = 0;
      while (e[lead] == 0) ++lead;
      if (v[lead] != 0) {
        mpq_class f = v[lead] / e[lead];
        for (std::size_t j = 0; j < dim; ++j) v[j] -= f * e[j];
      }
    }
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (zero) continue;
    echelon.push_back(std::move(v));
    chosen.push_back(r);
    if (chosen.size() == dim) break;
  }
  if (chosen.size() < dim) throw Error(ErrorCode::SingularMatrix, "generators do not span a full-rank lattice");
  return abs(det(IntMatrix::from_rows(chosen)));
}

}  // namespace

// ---------------------------------------------------------------------------
// IntegerSublattice

IntegerSublattice IntegerSublattice::whole(std::size_t dim) { return {dim, IntMatrix::identity(dim)}; }

IntegerSublattice IntegerSublattice::from_rows(const std::vector<IntVector>& rows, std::size_t dim) {
  return {dim, hermite_basis(rows, dim, lattice_modulus(rows, dim))};
}

Integer IntegerSublattice::index() const { return det(basis_); }

bool IntegerSublattice::contains(const IntVector& v) const {
  require_dim(v.size(), dim_);
  return solve_upper(basis_, v).has_value();
}

IntVector IntegerSublattice::shortest_vector(std::size_t node_budget) const {
  const std::size_t n = dim_;
  std::vector<IntVector> b = basis_.rows();
  auto dot = [n](const IntVector& x, const IntVector& y) {
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  };

  // Exact Gram–Schmidt data: mu[i][j] and squared lengths bstar[i].
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> bstar(n);
  auto gram_schmidt = [&] {
    std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) star[i][c] = b[i][c];
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (std::size_t c = 0; c < n; ++c) num += mpq_class(b[i][c]) * star[j][c];
        mu[i][j] = num / bstar[j];
        for (std::size_t c = 0; c < n; ++c) star[i][c] -= mu[i][j] * star[j][c];
      }
      bstar[i] = 0;
      for (std::size_t c = 0; c < n; ++c) bstar[i] += star[i][c] * star[i][c];
    }
  };

  // LLL with delta = 3/4, recomputing Gram–Schmidt after each change (n is small).
  gram_schmidt();
  const mpq_class delta(3, 4);
  for (std::size_t k = 1; k < n;) {
    for (std::size_t j = k; j-- > 0;) {
      mpq_class q = mu[k][j];
      Integer r;
      // Nearest integer to q.
      mpq_class shifted = q + mpq_class(1, 2);
      mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      if (r != 0) {
        for (std::size_t c = 0; c < n; ++c) b[k][c] -= r * b[j][c];
        gram_schmidt();
      }
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }

  IntVector best_vec = b[0];
  mpq_class best = mpq_class(dot(b[0], b[0]));

  // Fincke–Pohst enumeration over coefficients x, last index first.
  std::size_t nodes = 0;
  std::vector<Integer> x(n, Integer(0));
  std::function<void(std::size_t, const mpq_class&)> visit = [&](std::size_t level, const mpq_class& used) {
    // level counts down from n; index i = level - 1 is being chosen.
    if (level == 0) {
      bool nonzero = false;
      for (const auto& xi : x) nonzero = nonzero || xi != 0;
      if (!nonzero || used >= best) return;
      IntVector v(n, Integer(0));
      for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0)
          for (std::size_t c = 0; c < n; ++c) v[c] += x[i] * b[i][c];
      best = used;
      best_vec = std::move(v);
      return;
    }
    const std::size_t i = level - 1;
    mpq_class center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= mpq_class(x[j]) * mu[j][i];
    Integer mid;
    mpq_class shifted = center + mpq_class(1, 2);
    mpz_fdiv_q(mid.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    // Walk outward from the nearest integer in both directions.
    for (int dir = 0; dir < 2; ++dir) {
      for (Integer xi = dir == 0 ? mid : mid - 1;; dir == 0 ? ++xi : --xi) {
        if (++nodes > node_budget) return;
        mpq_class off = mpq_class(xi) - center;
        mpq_class next = used + off * off * bstar[i];
        if (next > best) break;
        x[i] = xi;
        visit(level - 1, next);
        x[i] = 0;
      }
    }
  };
  visit(n, mpq_class(0));
  return best_vec;
}

bool is_subset(const IntegerSublattice& a, const IntegerSublattice& b) {
  require_dim(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    if (!b.contains(a.basis().row(r))) return false;
  return true;
}

IntegerSublattice intersect(const IntegerSublattice& a, const IntegerSublattice& b) {
  require_dim(a.dim(), b.dim());
  const std::size_t n = a.dim();
  // Zassenhaus: rows (a_i | a_i) and (b_i | 0); the HNF rows whose left half
  // vanishes carry a basis of a ∩ b in their right half.
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    IntVector row(2 * n, Integer(0));
    for (std::size_t c = 0; c < n; ++c) row[c] = row[n + c] = a.basis()(r, c);
    rows.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < n; ++r) {
    IntVector row(2 * n, Integer(0));
    for (std::size_t c = 0; c < n; ++c) row[c] = b.basis()(r, c);
    rows.push_back(std::move(row));
  }
  const IntMatrix h = hermite_basis(rows, 2 * n, a.index() * b.index());
  std::vector<IntVector> bottom;
  for (std::size_t r = n; r < 2 * n; ++r) {
    IntVector row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = h(r, n + c);
    bottom.push_back(std::move(row));
  }
  return IntegerSublattice::from_rows(bottom, n);
}

// ---------------------------------------------------------------------------
// RationalLattice

RationalLattice RationalLattice::integers(std::size_t dim) { return {dim, Integer(1), IntMatrix::identity(dim)}; }

RationalLattice RationalLattice::from_generators(const std::vector<IntVector>& rows, const Integer& denom,
                                                 std::size_t dim) {
  if (denom == 0) throw Error(ErrorCode::InvalidArgument, "lattice denominator must be nonzero");
  const Integer d = abs(denom);
  IntMatrix b = hermite_basis(rows, dim, d);
  // Smallest denominator: divide out the common factor of D and all entries of B.
  Integer g = d;
  for (std::size_t r = 0; r < dim && g != 1; ++r)
    for (std::size_t c = 0; c < dim; ++c) g = gcd(g, b(r, c));
  if (g != 1) {
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) mpz_divexact(b(r, c).get_mpz_t(), b(r, c).get_mpz_t(), g.get_mpz_t());
  }
  return {dim, d / g, std::move(b)};
}

RationalLattice RationalLattice::from_kernel(const IntMatrix& g) {
  const Integer d = require_nonsingular(g, "from_kernel");
  IntMatrix gen = adjugate(g).transpose();
  if (d < 0) gen = -gen;
  return from_generators(gen.rows(), abs(d), g.dim());
}

Integer RationalLattice::index() const {
  Integer num;
  mpz_pow_ui(num.get_mpz_t(), denom_.get_mpz_t(), static_cast<unsigned long>(dim_));
  return num / det(basis_);
}

bool RationalLattice::contains(const IntVector& numerators, const Integer& denominator) const {
  require_dim(numerators.size(), dim_);
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  IntVector scaled(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Integer t = numerators[i] * denom_;
    if (!mpz_divisible_p(t.get_mpz_t(), denominator.get_mpz_t())) return false;
    mpz_divexact(scaled[i].get_mpz_t(), t.get_mpz_t(), denominator.get_mpz_t());
  }
  return solve_upper(basis_, scaled).has_value();
}

RationalLattice join(const RationalLattice& a, const RationalLattice& b) {
  require_dim(a.dim(), b.dim());
  const Integer common = lcm(a.denom(), b.denom());
  std::vector<IntVector> rows = (common / a.denom() * a.basis()).rows();
  for (auto& r : (common / b.denom() * b.basis()).rows()) rows.push_back(std::move(r));
  return RationalLattice::from_generators(rows, common, a.dim());
}

RationalLattice pushforward(const IntMatrix& f, const RationalLattice& l) {
  require_dim(f.dim(), l.dim());
  require_nonsingular(f, "pushforward");
  return RationalLattice::from_generators(times(l.basis().rows(), f.transpose()), l.denom(), l.dim());
}

RationalLattice preimage(const IntMatrix& g, const RationalLattice& l) {
  require_dim(g.dim(), l.dim());
  const Integer d = require_nonsingular(g, "preimage");
  IntMatrix inv_t = adjugate(g).transpose();
  if (d < 0) inv_t = -inv_t;
  return RationalLattice::from_generators(times(l.basis().rows(), inv_t), l.denom() * abs(d), l.dim());
}

IntegerSublattice dual_annihilator(const RationalLattice& l) {
  const IntMatrix& b = l.basis();
  const Integer det_b = det(b);
  // Rows of D·(B⁻¹)ᵀ = D·adj(B)ᵀ / det B; integral because L contains Z^d.
  std::vector<IntVector> rows = (l.denom() * adjugate(b).transpose()).rows();
  for (auto& r : rows)
    for (auto& x : r) {
      if (!mpz_divisible_p(x.get_mpz_t(), det_b.get_mpz_t())) {
        throw Error(ErrorCode::InternalError, "dual of a lattice containing Z^d must be integral");
      }
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), det_b.get_mpz_t());
    }
  return IntegerSublattice::from_rows(rows, l.dim());
}

RationalLattice dual_lattice(const IntegerSublattice& m) {
  const Integer d = det(m.basis());
  IntMatrix gen = adjugate(m.basis()).transpose();
  if (d < 0) gen = -gen;
  return RationalLattice::from_generators(gen.rows(), abs(d), m.dim());
}

bool is_subset(const RationalLattice& a, const RationalLattice& b) {
  require_dim(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    if (!b.contains(a.basis().row(r), a.denom())) return false;
  return true;
}

bool equals(const RationalLattice& a, const RationalLattice& b) {
  require_dim(a.dim(), b.dim());
  return a == b;
}

}  // namespace qs
