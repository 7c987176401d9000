#include "qs/intmat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "qs/error.hpp"

namespace qs {

namespace {

void require_same_dim(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ: " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

Integer cofactor_det(const std::vector<Integer>& a, std::size_t n) {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  Integer total = 0;
  std::vector<Integer> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (a[col] == 0) continue;
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t k = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col) continue;
        minor[(r - 1) * (n - 1) + k++] = a[r * n + c];
      }
    }
    Integer term = a[col] * cofactor_det(minor, n - 1);
    if (col % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

// Fraction-free Gaussian elimination.
Integer bareiss_det(std::vector<Integer> a, std::size_t n) {
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = v;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

void row_axpy(std::vector<Integer>& target, const Integer& factor, const std::vector<Integer>& source) {
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += factor * source[i];
}

// Replaces (x, y) by (s·x + t·y, -(b/g)·x + (a/g)·y) where a = x[col], b = y[col];
// afterwards x[col] = gcd and y[col] = 0. The 2×2 transform has determinant 1.
void gcd_combine(std::vector<Integer>& x, std::vector<Integer>& y, std::size_t col) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x[col].get_mpz_t(), y[col].get_mpz_t());
  Integer a_div = x[col] / g;
  Integer b_div = y[col] / g;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Integer nx = s * x[i] + t * y[i];
    Integer ny = a_div * y[i] - b_div * x[i];
    x[i] = std::move(nx);
    y[i] = std::move(ny);
  }
}

bool is_zero_row(const std::vector<Integer>& r) {
  return std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Integer(0)) {}

IntMatrix::IntMatrix(std::size_t dim, std::vector<Integer> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim_ * dim_) + " entries");
  }
}

IntMatrix IntMatrix::identity(std::size_t dim) { return scalar(dim, 1); }

IntMatrix IntMatrix::scalar(std::size_t dim, const Integer& value) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = value;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw Error(ErrorCode::DimensionMismatch, "matrix has no rows");
  const std::size_t n = rows.size();
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) + " entries, expected " +
                                                    std::to_string(n));
    }
    entries.insert(entries.end(), rows[r].begin(), rows[r].end());
  }
  return IntMatrix(n, std::move(entries));
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_));
}

std::vector<IntVector> IntMatrix::rows() const {
  std::vector<IntVector> out;
  out.reserve(dim_);
  for (std::size_t r = 0; r < dim_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  IntVector out(dim_, Integer(0));
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

bool IntMatrix::is_upper_triangular() const {
  for (std::size_t r = 1; r < dim_; ++r)
    for (std::size_t c = 0; c < r; ++c)
      if ((*this)(r, c) != 0) return false;
  return true;
}

bool IntMatrix::is_lower_triangular() const { return transpose().is_upper_triangular(); }

bool IntMatrix::is_diagonal() const { return is_upper_triangular() && is_lower_triangular(); }

bool IntMatrix::is_identity() const { return *this == identity(dim_); }

bool IntMatrix::is_scalar() const { return dim_ > 0 && *this == scalar(dim_, (*this)(0, 0)); }

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < dim_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& e : out.entries_) e *= s;
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a, b);
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& a) { return Integer(-1) * a; }

IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  IntVector out(m.dim(), Integer(0));
  for (std::size_t k = 0; k < m.dim(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

Integer det(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<Integer> a;
  a.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a.push_back(m(r, c));
  if (n <= 4) return cofactor_det(a, n);
  return bareiss_det(std::move(a), n);
}

IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // adj(j, i) is the (i, j) cofactor.
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Integer cof = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  }
  return adj;
}

bool is_unimodular(const IntMatrix& m) { return abs(det(m)) == 1; }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

HermiteForm hnf(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (det(m) == 0) throw Error(ErrorCode::SingularMatrix, "hnf requires a nonsingular matrix");

  // Rows of [m | I]; every row operation is applied to both halves.
  std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(2 * n, Integer(0)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = m(r, c);
    rows[r][n + r] = 1;
  }

  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = c + 1; r < n; ++r) {
      if (rows[r][c] != 0) gcd_combine(rows[c], rows[r], c);
    }
    if (rows[c][c] < 0) {
      for (auto& v : rows[c]) v = -v;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < c; ++i) {
      Integer q = floor_div(rows[i][c], rows[c][c]);
      if (q != 0) row_axpy(rows[i], -q, rows[c]);
    }
  }

  HermiteForm out{IntMatrix(n), IntMatrix(n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out.h(r, c) = rows[r][c];
      out.u(r, c) = rows[r][n + c];
    }
  return out;
}

IntMatrix hermite_basis(const std::vector<IntVector>& rows, std::size_t dim, const Integer& modulus) {
  if (modulus <= 0) throw Error(ErrorCode::InvalidArgument, "hermite_basis modulus must be positive");
  std::vector<IntVector> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator length does not match dimension");
    IntVector reduced(dim);
    for (std::size_t j = 0; j < dim; ++j) mpz_fdiv_r(reduced[j].get_mpz_t(), r[j].get_mpz_t(), modulus.get_mpz_t());
    if (!is_zero_row(reduced)) work.push_back(std::move(reduced));
  }

  IntMatrix basis(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    // modulus·e_c is kept untouched until its own column so that reducing the
    // other rows modulo `modulus` never changes the lattice.
    IntVector pivot(dim, Integer(0));
    pivot[c] = modulus;
    for (auto& r : work) {
      if (r[c] != 0) gcd_combine(pivot, r, c);
    }
    if (pivot[c] < 0) {
      for (auto& v : pivot) v = -v;
    }
    for (std::size_t j = c + 1; j < dim; ++j) mpz_fdiv_r(pivot[j].get_mpz_t(), pivot[j].get_mpz_t(), modulus.get_mpz_t());
    std::vector<IntVector> next;
    next.reserve(work.size());
    for (auto& r : work) {
      for (std::size_t j = c + 1; j < dim; ++j) mpz_fdiv_r(r[j].get_mpz_t(), r[j].get_mpz_t(), modulus.get_mpz_t());
      if (!is_zero_row(r)) next.push_back(std::move(r));
    }
    work = std::move(next);
    for (std::size_t j = 0; j < dim; ++j) basis(c, j) = pivot[j];
  }

  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < c; ++i) {
      Integer q = floor_div(basis(i, c), basis(c, c));
      if (q == 0) continue;
      for (std::size_t j = c; j < dim; ++j) basis(i, j) -= q * basis(c, j);
    }
  }
  return basis;
}

SmithDecomposition snf(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (det(m) == 0) throw Error(ErrorCode::SingularMatrix, "snf requires a nonsingular matrix");

  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(n);
  IntMatrix right = IntMatrix::identity(n);

  auto swap_rows = [n](IntMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(x(i, c), x(j, c));
  };
  auto swap_cols = [n](IntMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(x(r, i), x(r, j));
  };
  auto add_row = [n](IntMatrix& x, std::size_t target, const Integer& f, std::size_t source) {
    for (std::size_t c = 0; c < n; ++c) x(target, c) += f * x(source, c);
  };
  auto add_col = [n](IntMatrix& x, std::size_t target, const Integer& f, std::size_t source) {
    for (std::size_t r = 0; r < n; ++r) x(r, target) += f * x(r, source);
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == n || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi != t) {
        swap_rows(a, t, pi);
        swap_rows(left, t, pi);
      }
      if (pj != t) {
        swap_cols(a, t, pj);
        swap_cols(right, t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        Integer q = a(i, t) / a(t, t);
        if (q != 0) {
          add_row(a, i, -q, t);
          add_row(left, i, -q, t);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q = a(t, j) / a(t, t);
        if (q != 0) {
          add_col(a, j, -q, t);
          add_col(right, j, -q, t);
        }
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      add_row(a, t, 1, bad);
      add_row(left, t, 1, bad);
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) {
        a(t, c) = -a(t, c);
        left(t, c) = -left(t, c);
      }
    }
  }

  // left·m·right = a, so m = left⁻¹·a·right⁻¹; inverses of unimodular matrices are det·adj.
  return SmithDecomposition{det(left) * adjugate(left), a, det(right) * adjugate(right)};
}

Integer mod_inverse_reduced(const Integer& b, const Integer& a) {
  if (a <= 0) throw Error(ErrorCode::InvalidArgument, "mod_inverse_reduced requires a > 0");
  Integer k = gcd(a, b);
  Integer modulus = a / k;
  if (modulus == 1) return 0;
  Integer reduced_b = b / k;
  Integer c;
  mpz_invert(c.get_mpz_t(), reduced_b.get_mpz_t(), modulus.get_mpz_t());
  mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  return c;
}

std::string to_string(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out + "]";
}

}  // namespace qs
