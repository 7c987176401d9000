#include "qs/polynomial.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "qs/error.hpp"

namespace qs::poly {

namespace {

template <typename P>
void trim(P& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <typename P>
long degree(const P& p) {
  return static_cast<long>(p.size()) - 1;
}

// ---------------------------------------------------------------------------
// Q[x]

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Long division; b must be nonzero.
std::pair<RatPoly, RatPoly> rat_divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  RatPoly q;
  if (degree(a) < degree(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  while (!a.empty() && degree(a) >= degree(b)) {
    const std::size_t shift = a.size() - b.size();
    mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

RatPoly rat_monic(RatPoly p) {
  trim(p);
  if (p.empty()) return p;
  mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = rat_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return rat_monic(a);
}

// Primitive integer polynomial with positive leading coefficient, same roots as p.
IntPoly primitive_part(const RatPoly& p) {
  Integer den = 1;
  for (const auto& c : p) den = lcm(den, Integer(c.get_den()));
  IntPoly out;
  for (const auto& c : p) out.push_back(Integer(c.get_num()) * (den / Integer(c.get_den())));
  trim(out);
  Integer content = 0;
  for (const auto& c : out) content = gcd(content, c);
  if (content == 0) return out;
  if (out.back() < 0) content = -content;
  for (auto& c : out) c /= content;
  return out;
}

// ---------------------------------------------------------------------------
// Z/m[x], coefficients kept in [0, m).

IntPoly reduce(IntPoly p, const Integer& m) {
  for (auto& c : p) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(p);
  return p;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

IntPoly sub(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

IntPoly add(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InternalError, "leading coefficient not invertible modulo " + m.get_str());
  }
  return inv;
}

// Division mod m by b whose leading coefficient is a unit mod m.
std::pair<IntPoly, IntPoly> divmod_mod(IntPoly a, IntPoly b, const Integer& m) {
  a = reduce(std::move(a), m);
  b = reduce(std::move(b), m);
  if (b.empty()) throw Error(ErrorCode::InternalError, "polynomial division by zero");
  IntPoly q;
  if (degree(a) < degree(b)) return {q, a};
  const Integer lead_inv = inverse_mod(b.back(), m);
  q.assign(a.size() - b.size() + 1, Integer(0));
  while (!a.empty() && degree(a) >= degree(b)) {
    const std::size_t shift = a.size() - b.size();
    Integer f = a.back() * lead_inv;
    mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = reduce(std::move(a), m);
  }
  trim(q);
  return {q, a};
}

IntPoly rem_mod(IntPoly a, const IntPoly& b, const Integer& m) { return divmod_mod(std::move(a), b, m).second; }

IntPoly monic_mod(IntPoly p, const Integer& m) {
  p = reduce(std::move(p), m);
  if (p.empty()) return p;
  const Integer inv = inverse_mod(p.back(), m);
  for (auto& c : p) c *= inv;
  return reduce(std::move(p), m);
}

IntPoly gcd_mod(IntPoly a, IntPoly b, const Integer& p) {
  a = reduce(std::move(a), p);
  b = reduce(std::move(b), p);
  while (!b.empty()) {
    IntPoly r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic_mod(std::move(a), p);
}

// Returns (s, t) with s·a + t·b ≡ 1 (mod p), for coprime a, b over F_p.
std::pair<IntPoly, IntPoly> bezout_mod(const IntPoly& a, const IntPoly& b, const Integer& p) {
  IntPoly r0 = reduce(a, p), r1 = reduce(b, p);
  IntPoly s0{Integer(1)}, s1{};
  IntPoly t0{}, t1{Integer(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod_mod(r0, r1, p);
    IntPoly s2 = reduce(sub(s0, mul(q, s1)), p);
    IntPoly t2 = reduce(sub(t0, mul(q, t1)), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (degree(r0) != 0) throw Error(ErrorCode::InternalError, "bezout_mod: inputs are not coprime");
  const Integer inv = inverse_mod(r0[0], p);
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  return {reduce(std::move(s0), p), reduce(std::move(t0), p)};
}

IntPoly powmod(IntPoly base, Integer exponent, const IntPoly& f, const Integer& p) {
  IntPoly result{Integer(1)};
  base = rem_mod(std::move(base), f, p);
  while (exponent > 0) {
    if (mpz_odd_p(exponent.get_mpz_t())) result = rem_mod(mul(result, base), f, p);
    exponent >>= 1;
    if (exponent > 0) base = rem_mod(mul(base, base), f, p);
  }
  return result;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Equal-degree splitting (Cantor–Zassenhaus) of a monic square-free f over
// F_p, p odd, all of whose irreducible factors have degree `k`.
void equal_degree_split(const IntPoly& f, long k, const Integer& p, std::mt19937_64& rng,
                        std::vector<IntPoly>& out) {
  if (degree(f) == k) {
    out.push_back(f);
    return;
  }
  Integer pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  const Integer exponent = (pk - 1) / 2;
  gmp_randclass gmp_rng(gmp_randinit_mt);
  gmp_rng.seed(static_cast<unsigned long>(rng()));
  while (true) {
    IntPoly r;
    for (long i = 0; i < degree(f); ++i) r.push_back(gmp_rng.get_z_range(p));
    trim(r);
    if (degree(r) < 1) continue;
    IntPoly w = sub(powmod(r, exponent, f, p), IntPoly{Integer(1)});
    IntPoly d = gcd_mod(w, f, p);
    if (degree(d) > 0 && degree(d) < degree(f)) {
      equal_degree_split(d, k, p, rng, out);
      equal_degree_split(divmod_mod(f, d, p).first, k, p, rng, out);
      return;
    }
  }
}

// Complete factorization of monic square-free f over F_p (p odd prime).
std::vector<IntPoly> factor_mod_prime(IntPoly f, const Integer& p) {
  std::mt19937_64 rng(0x5eedULL);
  std::vector<IntPoly> out;
  const IntPoly x{Integer(0), Integer(1)};
  IntPoly h = x;
  long k = 0;
  while (degree(f) >= 2 * (k + 1)) {
    ++k;
    h = powmod(h, p, f, p);
    IntPoly g = gcd_mod(sub(h, x), f, p);
    if (degree(g) > 0) {
      equal_degree_split(g, k, p, rng, out);
      f = divmod_mod(f, g, p).first;
      h = rem_mod(h, f, p);
    }
  }
  if (degree(f) > 0) out.push_back(monic_mod(f, p));
  return out;
}

// Lifts a ≡ g·h (mod p) to mod p^levels; a is monic modulo p^levels, g, h monic.
std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& a, IntPoly g, IntPoly h, const Integer& p,
                                        unsigned long levels) {
  auto [s, t] = bezout_mod(g, h, p);
  const IntPoly g0 = g, h0 = h;
  Integer pj = p;
  for (unsigned long j = 1; j < levels; ++j) {
    const Integer next = pj * p;
    IntPoly e = reduce(sub(a, mul(g, h)), next);
    for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
    trim(e);
    IntPoly dh = rem_mod(mul(e, s), h0, p);
    IntPoly dg = rem_mod(mul(e, t), g0, p);
    for (auto& c : dg) c *= pj;
    for (auto& c : dh) c *= pj;
    g = reduce(add(g, dg), next);
    h = reduce(add(h, dh), next);
    pj = next;
  }
  return {g, h};
}

void hensel_lift(const IntPoly& a, const std::vector<IntPoly>& factors, const Integer& p, unsigned long levels,
                 const Integer& modulus, std::vector<IntPoly>& out) {
  if (factors.size() == 1) {
    out.push_back(reduce(a, modulus));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<IntPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<IntPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  IntPoly g{Integer(1)}, h{Integer(1)};
  for (const auto& f : left) g = reduce(mul(g, f), p);
  for (const auto& f : right) h = reduce(mul(h, f), p);
  auto [lg, lh] = hensel_pair(a, g, h, p, levels);
  hensel_lift(lg, left, p, levels, modulus, out);
  hensel_lift(lh, right, p, levels, modulus, out);
}

// Exact division test in Z[x] by a monic divisor.
bool divides_exactly(const IntPoly& divisor, IntPoly a) {
  trim(a);
  while (!a.empty() && degree(a) >= degree(divisor)) {
    const std::size_t shift = a.size() - divisor.size();
    const Integer f = a.back();
    for (std::size_t i = 0; i < divisor.size(); ++i) a[shift + i] -= f * divisor[i];
    trim(a);
  }
  return a.empty();
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

IntPoly charpoly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntPoly c(n + 1, Integer(0));
  c[n] = 1;
  IntMatrix acc(n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc + IntMatrix::scalar(n, c[n - k + 1]);
    IntMatrix prod = m * acc;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    Integer coeff = -trace;
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = coeff;
  }
  return c;
}

bool roots_inside_unit_disk(const IntPoly& input) {
  IntPoly p = input;
  trim(p);
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no well-defined roots");
  while (degree(p) > 0) {
    const std::size_t n = p.size() - 1;
    const Integer a0 = p[0];
    const Integer an = p[n];
    if (abs(a0) >= abs(an)) return false;
    // (a_n·p(x) − a_0·x^n·p(1/x)) / x has the same number of roots inside the
    // disk as p minus one, and keeps any roots on the circle.
    IntPoly next(n);
    Integer content = 0;
    for (std::size_t k = 0; k < n; ++k) {
      next[k] = an * p[k + 1] - a0 * p[n - (k + 1)];
      content = gcd(content, next[k]);
    }
    if (content > 1)
      for (auto& c : next) c /= content;
    trim(next);
    p = std::move(next);
  }
  return true;
}

bool roots_outside_unit_disk(const IntPoly& input) {
  IntPoly p = input;
  trim(p);
  if (degree(p) < 1 || p[0] == 0) return false;
  std::reverse(p.begin(), p.end());
  return roots_inside_unit_disk(p);
}

std::optional<IntPoly> find_unit_factor(const RatPoly& input) {
  RatPoly p = input;
  trim(p);
  if (degree(p) < 1) return std::nullopt;

  // Irreducible factors are those of the square-free part.
  RatPoly sqfree = rat_monic(rat_divmod(p, rat_gcd(p, rat_derivative(p))).first);
  IntPoly q = primitive_part(sqfree);
  const long n = degree(q);
  if (n < 1) return std::nullopt;

  // Prime with q square-free mod p and p not dividing the leading coefficient.
  Integer prime;
  for (unsigned long cand = 3;; cand += 2) {
    if (!is_prime(cand)) continue;
    prime = cand;
    if (q.back() % prime == 0) continue;
    IntPoly g = gcd_mod(q, derivative(q), prime);
    if (degree(g) == 0) break;
  }

  const IntPoly q_monic_p = monic_mod(q, prime);
  std::vector<IntPoly> modular = factor_mod_prime(q_monic_p, prime);

  // Coefficients of a monic divisor of q are bounded by 2^n·||q||_2 (Mahler measure).
  Integer norm2 = 0;
  for (const auto& c : q) norm2 += c * c;
  Integer bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(n);
  unsigned long levels = 1;
  Integer modulus = prime;
  while (modulus <= 2 * bound + 1) {
    modulus *= prime;
    ++levels;
  }

  IntPoly a = monic_mod(q, modulus);
  std::vector<IntPoly> lifted;
  hensel_lift(a, modular, prime, levels, modulus, lifted);

  const Integer half = modulus / 2;
  const std::size_t count = lifted.size();
  for (std::size_t size = 1; size <= count; ++size) {
    std::vector<bool> select(count, false);
    std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      IntPoly cand{Integer(1)};
      for (std::size_t i = 0; i < count; ++i)
        if (select[i]) cand = reduce(mul(cand, lifted[i]), modulus);
      for (auto& c : cand)
        if (c > half) c -= modulus;
      if (abs(cand[0]) == 1 && divides_exactly(cand, q)) return cand;
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return std::nullopt;
}

Integer evaluate(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly to_rational(const IntPoly& p) {
  RatPoly out;
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

std::string to_string(const IntPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (long i = degree(p); i >= 0; --i) {
    const Integer& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Integer mag = abs(c);
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace qs::poly
