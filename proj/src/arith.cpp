#include "selmer/arith.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "selmer/error.hpp"

namespace selmer {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_form: return "invalid form";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::dimension: return "dimension mismatch";
    case ErrorKind::invalid_class: return "invalid class";
    case ErrorKind::not_in_catalog: return "not in catalog";
    case ErrorKind::baseline_failure: return "baseline failure";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::integrality: return "integrality";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::domain: return "domain";
    case ErrorKind::range: return "range";
    case ErrorKind::insufficient_data: return "insufficient data";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "error";
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::domain, "isqrt of negative");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  const auto r = isqrt(n);
  return r * r == n;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

int valuation(i128 x, std::int64_t p) {
  if (x == 0) throw Error(ErrorKind::domain, "valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= 0xFFFFFFFFull) return (a % m) * (b % m) % m;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::int64_t mod(i128 a, std::int64_t m) {
  auto r = static_cast<std::int64_t>(a % m);
  return r < 0 ? r + m : r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  if (g != 1) throw Error(ErrorKind::domain, "not invertible");
  return mod(x, m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::domain, "kronecker needs n >= 1");
  if (n == 1) return 1;
  int result = 1;
  // Strip the 2-part of n with (a/2) = 0, 1, -1 per a mod 8.
  while ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    const auto r8 = mod(a, 8);
    if (r8 == 3 || r8 == 5) result = -result;
    n >>= 1;
  }
  // n odd: Jacobi symbol.
  a = mod(a, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const auto r8 = n & 7;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks.
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t x = powmod(a, (q + 1) / 2, p);
  std::uint64_t t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 1;
    std::uint64_t t2 = mulmod(t, t, p);
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

namespace {

// Barrett reduction for p < 2^32, where products of residues fit in 64 bits.
struct Barrett {
  std::uint64_t p, m;
  explicit Barrett(std::uint64_t p_) : p(p_), m(~std::uint64_t{0} / p_) {}
  std::uint64_t reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m) >> 64);
    std::uint64_t r = x - q * p;
    while (r >= p) r -= p;
    return r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
};

// Arithmetic in F_p[x]/(x^3 + f2 x^2 + f1 x + f0); elements are {c0, c1, c2}.
using Quot = std::array<std::uint64_t, 3>;

Quot quot_mul(const Quot& u, const Quot& v, const Quot& f, const Barrett& B) {
  const std::uint64_t p = B.p;
  std::array<std::uint64_t, 5> w{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) w[i + j] = B.reduce(w[i + j] + B.mul(u[i], v[j]));
  }
  for (int d = 4; d >= 3; --d) {
    const std::uint64_t lead = w[d];
    if (lead == 0) continue;
    w[d] = 0;
    for (int i = 0; i < 3; ++i) w[d - 3 + i] = B.reduce(w[d - 3 + i] + p - B.mul(lead, f[i]));
  }
  return {w[0], w[1], w[2]};
}

int degree(const std::vector<std::uint64_t>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != 0) return i;
  }
  return -1;
}

// Degree of gcd(a, b) over F_p.
int gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t p) {
  while (degree(b) >= 0) {
    const int db = degree(b);
    const auto inv = static_cast<std::uint64_t>(invmod(static_cast<std::int64_t>(b[db]),
                                                       static_cast<std::int64_t>(p)));
    for (int da = degree(a); da >= db; da = degree(a)) {
      const std::uint64_t q = mulmod(a[da], inv, p);
      for (int i = 0; i <= db; ++i) {
        a[da - db + i] = (a[da - db + i] + p - mulmod(q, b[i], p)) % p;
      }
    }
    std::swap(a, b);
  }
  return degree(a);
}

}  // namespace

int cubic_root_count(std::int64_t c3, std::int64_t c2, std::int64_t c1, std::int64_t c0,
                     std::int64_t p) {
  const auto up = static_cast<std::uint64_t>(p);
  const auto r3 = static_cast<std::uint64_t>(mod(c3, p));
  if (r3 == 0) throw Error(ErrorKind::domain, "cubic degenerates mod p");
  const auto r2 = static_cast<std::uint64_t>(mod(c2, p));
  const auto r1 = static_cast<std::uint64_t>(mod(c1, p));
  const auto r0 = static_cast<std::uint64_t>(mod(c0, p));
  if (p < 64) {
    int count = 0;
    for (std::uint64_t x = 0; x < up; ++x) {
      const std::uint64_t v = (((r3 * x + r2) % up * x + r1) % up * x + r0) % up;
      if (v == 0) ++count;
    }
    return count;
  }
  if (p > 0xFFFFFFFFll) throw Error(ErrorKind::domain, "cubic_root_count needs p < 2^32");
  const Barrett B(up);
  const auto inv = static_cast<std::uint64_t>(invmod(static_cast<std::int64_t>(r3), p));
  const Quot f{B.mul(r0, inv), B.mul(r1, inv), B.mul(r2, inv)};
  // x^p mod f, then roots = deg gcd(f, x^p - x).
  Quot acc{1, 0, 0};
  Quot base{0, 1, 0};
  for (std::uint64_t e = up; e > 0; e >>= 1) {
    if (e & 1) acc = quot_mul(acc, base, f, B);
    base = quot_mul(base, base, f, B);
  }
  acc[1] = (acc[1] + up - 1) % up;
  std::vector<std::uint64_t> fm{f[0], f[1], f[2], 1};
  std::vector<std::uint64_t> g{acc[0], acc[1], acc[2]};
  if (degree(g) < 0) return 3;
  return gcd_degree(fm, g, up);
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace selmer
