#include "selmer/bsd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "selmer/arith.hpp"
#include "selmer/error.hpp"

namespace selmer {

namespace {

// ---- point counting -------------------------------------------------------

// Montgomery arithmetic modulo an odd prime p < 2^31, R = 2^32.
struct Mont {
  std::uint32_t p, pinv, r2;  // pinv = -p^-1 mod R, r2 = R^2 mod p

  explicit Mont(std::uint32_t mod) : p(mod) {
    std::uint32_t inv = p;  // correct to 3 bits; each step doubles that
    for (int i = 0; i < 4; ++i) inv *= 2 - p * inv;
    pinv = 0u - inv;
    r2 = static_cast<std::uint32_t>((static_cast<unsigned __int128>(1) << 64) % p);
  }
  std::uint32_t reduce(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pinv;
    const std::uint64_t u = (t + static_cast<std::uint64_t>(m) * p) >> 32;
    return static_cast<std::uint32_t>(u >= p ? u - p : u);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(static_cast<std::uint64_t>(a) * b); }
  std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t c = a + b;
    return c >= p ? c - p : c;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t to(std::uint64_t a) const { return mul(static_cast<std::uint32_t>(a % p), r2); }
  std::uint32_t from(std::uint32_t a) const { return reduce(a); }
  std::uint32_t inv(std::uint32_t a) const {
    return to(static_cast<std::uint64_t>(invmod(from(a), p)));
  }
};

// Points on y^2 = x^3 + a x + b, coordinates in Montgomery form.
struct Aff {
  std::uint32_t x = 0, y = 0;
  bool inf = true;
};
struct Jac {
  std::uint32_t X = 0, Y = 0, Z = 0;  // Z = 0 is the point at infinity
};

struct Curve {
  const Mont& M;
  std::uint32_t a, b;

  std::uint32_t rhs(std::uint32_t x) const { return M.add(M.mul(M.add(M.sqr(x), a), x), b); }

  Jac dbl(const Jac& P) const {
    if (P.Z == 0 || P.Y == 0) return {};
    const auto XX = M.sqr(P.X), YY = M.sqr(P.Y), YYYY = M.sqr(YY), ZZ = M.sqr(P.Z);
    const auto t = M.sub(M.sub(M.sqr(M.add(P.X, YY)), XX), YYYY);
    const auto S = M.add(t, t);
    const auto m = M.add(M.add(M.add(XX, XX), XX), M.mul(a, M.sqr(ZZ)));
    const auto X3 = M.sub(M.sqr(m), M.add(S, S));
    auto y8 = M.add(YYYY, YYYY);
    y8 = M.add(y8, y8);
    y8 = M.add(y8, y8);
    const auto Y3 = M.sub(M.mul(m, M.sub(S, X3)), y8);
    const auto Z3 = M.sub(M.sub(M.sqr(M.add(P.Y, P.Z)), YY), ZZ);
    return {X3, Y3, Z3};
  }

  // P + Q with Q affine.
  Jac madd(const Jac& P, const Aff& Q) const {
    if (Q.inf) return P;
    if (P.Z == 0) return {Q.x, Q.y, M.to(1)};
    const auto Z1Z1 = M.sqr(P.Z);
    const auto U2 = M.mul(Q.x, Z1Z1), S2 = M.mul(Q.y, M.mul(P.Z, Z1Z1));
    const auto H = M.sub(U2, P.X);
    const auto r0 = M.sub(S2, P.Y);
    if (H == 0) return r0 == 0 ? dbl(P) : Jac{};
    const auto r = M.add(r0, r0);
    const auto HH = M.sqr(H);
    auto I = M.add(HH, HH);
    I = M.add(I, I);
    const auto J = M.mul(H, I), V = M.mul(P.X, I);
    const auto X3 = M.sub(M.sub(M.sqr(r), J), M.add(V, V));
    const auto yj = M.mul(P.Y, J);
    const auto Y3 = M.sub(M.mul(r, M.sub(V, X3)), M.add(yj, yj));
    const auto Z3 = M.sub(M.sub(M.sqr(M.add(P.Z, H)), Z1Z1), HH);
    return {X3, Y3, Z3};
  }

  Jac mul(const Aff& P, std::uint64_t k) const {
    Jac R;
    for (int bit = 63; bit >= 0; --bit) {
      R = dbl(R);
      if ((k >> bit) & 1) R = madd(R, P);
    }
    return R;
  }

  Aff normalize(const Jac& P) const {
    if (P.Z == 0) return {};
    const auto zi = M.inv(P.Z), zi2 = M.sqr(zi);
    return {M.mul(P.X, zi2), M.mul(P.Y, M.mul(zi2, zi)), false};
  }

  // One inversion for the whole batch.
  std::vector<Aff> normalize(const std::vector<Jac>& pts) const {
    std::vector<std::uint32_t> prefix(pts.size());
    std::uint32_t acc = M.to(1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      prefix[i] = acc;
      if (pts[i].Z != 0) acc = M.mul(acc, pts[i].Z);
    }
    std::uint32_t inv = M.inv(acc);
    std::vector<Aff> out(pts.size());
    for (std::size_t i = pts.size(); i-- > 0;) {
      if (pts[i].Z == 0) continue;
      const auto zi = M.mul(inv, prefix[i]);
      inv = M.mul(inv, pts[i].Z);
      const auto zi2 = M.sqr(zi);
      out[i] = {M.mul(pts[i].X, zi2), M.mul(pts[i].Y, M.mul(zi2, zi)), false};
    }
    return out;
  }
};

// All j in [lo, hi] with j Q = O, by baby-step giant-step.
std::vector<std::uint64_t> annihilators(const Curve& C, const Aff& Q, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t width = hi - lo + 1;
  const auto s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width))));
  std::vector<Jac> baby_j(s);
  Jac cur;
  for (std::uint64_t j = 0; j < s; ++j) {
    if (j > 0 && cur.Z == 0) {
      // Order j < s: every multiple of j in range annihilates Q.
      std::vector<std::uint64_t> hits;
      for (std::uint64_t m = (lo + j - 1) / j * j; m <= hi; m += j) hits.push_back(m);
      return hits;
    }
    baby_j[j] = cur;
    cur = C.madd(cur, Q);
  }
  const Aff G = C.normalize(cur);  // s Q
  const auto baby_pts = C.normalize(baby_j);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> baby;  // (x, j), j >= 1
  baby.reserve(s);
  for (std::uint64_t j = 1; j < s; ++j) baby.emplace_back(baby_pts[j].x, static_cast<std::uint32_t>(j));
  std::sort(baby.begin(), baby.end());

  const std::uint64_t giants = width / s + 2;
  std::vector<Jac> giant_j(giants);
  Jac R = C.mul(Q, lo);
  for (std::uint64_t i = 0; i < giants; ++i) {
    giant_j[i] = R;
    R = C.madd(R, G);
  }
  const auto giant = C.normalize(giant_j);

  std::vector<std::uint64_t> hits;
  const auto keep = [&](std::uint64_t m) {
    if (m >= lo && m <= hi) hits.push_back(m);
  };
  for (std::uint64_t i = 0; i < giants; ++i) {
    const std::uint64_t base = lo + i * s;
    const Aff& P = giant[i];
    // base Q = P; matching j Q gives (base - j) Q = O, matching -j Q gives (base + j) Q = O.
    if (P.inf) {
      keep(base);
      continue;
    }
    auto it = std::lower_bound(baby.begin(), baby.end(), std::pair<std::uint32_t, std::uint32_t>{P.x, 0});
    for (; it != baby.end() && it->first == P.x; ++it) {
      const std::uint32_t y = baby_pts[it->second].y;
      if (y == P.y) keep(base - it->second);
      if (C.M.add(y, P.y) == 0) keep(base + it->second);
    }
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

std::vector<std::uint64_t> intersect(const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// #E(F_p) for 2000 <= p < 2^31 by BSGS on E and its quadratic twist; -1 if undecided.
// #E(F_p) is a multiple of tors_e and the twist's count a multiple of tors_t.
std::int64_t count_points_bsgs(std::uint32_t p, std::uint64_t A, std::uint64_t B, std::uint64_t tors_e,
                               std::uint64_t tors_t) {
  const Mont M(p);
  const auto r = static_cast<std::uint64_t>(isqrt(4 * static_cast<std::int64_t>(p)));
  const std::uint64_t lo = p + 1 - r, hi = p + 1 + r;
  std::uint64_t d = 2;
  while (kronecker(static_cast<std::int64_t>(d), p) != -1) ++d;
  const auto a = M.to(A), b = M.to(B), dd = M.to(d);
  const Curve E{M, a, b};
  const Curve T{M, M.mul(a, M.sqr(dd)), M.mul(b, M.mul(dd, M.sqr(dd)))};

  std::vector<std::uint64_t> cand;  // candidates for #E
  bool have = false;
  std::uint32_t xe = 0, xt = 0;
  for (int round = 0; round < 64; ++round) {
    const bool on_twist = (round % 2) == 1;
    const Curve& C = on_twist ? T : E;
    const std::uint64_t step = on_twist ? tors_t : tors_e;
    std::uint32_t& x = on_twist ? xt : xe;
    Aff P;
    while (P.inf && x < p) {
      const auto X = M.to(x++);
      const auto f = M.from(C.rhs(X));
      if (f == 0) continue;  // 2-torsion carries no information here
      if (kronecker(f, p) == 1) P = {X, M.to(sqrtmod(f, p)), false};
    }
    if (P.inf) continue;
    const Aff Q = C.normalize(C.mul(P, step));
    if (Q.inf) continue;
    auto hits = annihilators(C, Q, (lo + step - 1) / step, hi / step);
    for (auto& h : hits) h *= step;
    if (on_twist) {
      for (auto& h : hits) h = 2 * static_cast<std::uint64_t>(p) + 2 - h;
      std::sort(hits.begin(), hits.end());
    }
    cand = have ? intersect(cand, hits) : hits;
    have = true;
    if (cand.size() == 1) return static_cast<std::int64_t>(cand.front());
    if (cand.empty()) return -1;
  }
  return -1;
}

std::int64_t legendre_sum_ap(const Invariants& inv, std::int64_t p) {
  // Odd p: #{y : (2y + a1 x + a3)^2 = f(x)} = 1 + (f(x)/p), f = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const std::int64_t b2 = mod(inv.b2, p), b4 = mod(inv.b4, p), b6 = mod(inv.b6, p);
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t f = ((4 * x % p * x % p * x + b2 * x % p * x + 2 * b4 * x) % p + b6) % p;
    sum += kronecker(f, p);
  }
  return -sum;
}

}  // namespace

std::int64_t count_ap_naive(const CurveSpec& spec, std::int64_t p) {
  if (p == 2) {
    const auto& a = spec.weierstrass;
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < 2; ++x) {
      for (std::int64_t y = 0; y < 2; ++y) {
        const std::int64_t lhs = y * y + a[0] * x * y + a[2] * y;
        const std::int64_t rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
        if (mod(lhs - rhs, 2) == 0) ++count;
      }
    }
    return 3 - count;
  }
  return legendre_sum_ap(invariants(spec.weierstrass), p);
}

std::int64_t count_ap(const CurveSpec& spec, std::int64_t p) {
  if (p < 2000 || p >= (std::int64_t{1} << 31) || spec.conductor % p == 0) return count_ap_naive(spec, p);
  const auto inv = invariants(spec.weierstrass);
  const auto A = static_cast<std::uint64_t>(mod(-27 * inv.c4, p));
  const auto B = static_cast<std::uint64_t>(mod(-54 * inv.c6, p));
  // Rational torsion injects into E(F_p) for odd good p; the twist keeps E's 2-torsion.
  const auto tors_e = static_cast<std::uint64_t>(spec.torsion_order);
  const auto tors_t = static_cast<std::uint64_t>(rational_two_torsion(spec));
  const std::int64_t n = count_points_bsgs(static_cast<std::uint32_t>(p), A, B, tors_e, tors_t);
  if (n < 0) return count_ap_naive(spec, p);
  return p + 1 - n;
}

WeightTwoCoefficients expand_b(const CurveSpec& spec, std::int64_t bound) {
  if (bound < 1) throw Error(ErrorKind::range, "expand_b needs bound >= 1");
  WeightTwoCoefficients w;
  w.bound = bound;
  auto& b = w.b;
  b.assign(static_cast<std::size_t>(bound + 1), 1);
  b[0] = 0;
  // Multiply in b(p^e) for each exact prime power p^e || m. No factor table is kept,
  // so memory is the coefficient array plus one bit per integer.
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  std::vector<std::int64_t> pp;  // b(p^e), e = 0, 1, ...
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    if (p <= bound / p) {
      for (std::int64_t m = p * p; m <= bound; m += p) composite[static_cast<std::size_t>(m)] = true;
    }
    const std::int64_t ap = count_ap(spec, p);
    const bool bad = spec.conductor % p == 0;
    pp.assign({1, ap});
    for (std::int64_t q = p; q <= bound / p; q *= p) {
      const auto e = pp.size();
      pp.push_back(bad ? ap * pp[e - 1] : ap * pp[e - 1] - p * pp[e - 2]);
    }
    for (std::int64_t m = p, q = 1; m <= bound; m += p, ++q) {
      std::size_t e = 1;
      for (std::int64_t r = q; r % p == 0; r /= p) ++e;
      b[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(b[static_cast<std::size_t>(m)] * pp[e]);
    }
  }
  return w;
}

std::int64_t twist_discriminant(std::int64_t n) { return n % 4 == 3 ? -n : -4 * n; }

namespace {

void check_twist_factor(const CurveSpec& spec, std::int64_t n) {
  if (n < 1 || gcd(n, 2 * spec.conductor) != 1) {
    throw Error(ErrorKind::precondition, "twist factor must be odd and coprime to the conductor");
  }
  for (auto p : prime_factors(n)) {
    if ((n / p) % p == 0) throw Error(ErrorKind::precondition, "twist factor must be squarefree");
  }
}

// Conductor of E_D for D = disc(-n): odd primes of N keep their exponent, primes of n
// become additive with exponent 2, and an even D makes the 2-part 2^4.
std::int64_t expected_conductor(const CurveSpec& spec, std::int64_t n) {
  std::int64_t odd = spec.conductor, two = 1;
  while (odd % 2 == 0) {
    odd /= 2;
    two *= 2;
  }
  if (twist_discriminant(n) % 2 == 0) two = 16;
  return odd * n * n * two;
}

std::vector<std::int8_t> character_table(std::int64_t disc) {
  const std::int64_t period = -disc;
  std::vector<std::int8_t> chi(static_cast<std::size_t>(period));
  for (std::int64_t m = 0; m < period; ++m) {
    chi[static_cast<std::size_t>(m)] = static_cast<std::int8_t>(m == 0 ? 0 : kronecker(disc, m));
  }
  return chi;
}

// Neumaier-compensated sum of c_m * weight(m) * exp(-2 pi m t / sqrt(N)), m = 1..terms.
template <bool DivideByM>
double weighted_sum(const WeightTwoCoefficients& b, const std::vector<std::int8_t>& chi,
                    std::int64_t terms, double scale) {
  const auto period = static_cast<std::int64_t>(chi.size());
  const double step = std::exp(-scale);
  double sum = 0.0, comp = 0.0, e = 1.0;
  for (std::int64_t m = 1; m <= terms; ++m) {
    // Refresh the geometric factor periodically to keep rounding drift bounded.
    e = (m % 256 == 1) ? std::exp(-scale * static_cast<double>(m)) : e * step;
    const int c = chi[static_cast<std::size_t>(m % period)] * b.b[static_cast<std::size_t>(m)];
    if (c == 0) continue;
    double term = c * e;
    if constexpr (DivideByM) term /= static_cast<double>(m);
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// Terms after which 4 r^(T+1)/(1-r) < tol with r = exp(-scale).
std::int64_t cutoff(double scale, double tol) {
  const double one_minus_r = -std::expm1(-scale);
  const double need = std::log(4.0 / (tol * one_minus_r)) / scale;
  return static_cast<std::int64_t>(std::ceil(need)) + 1;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFeT = 1.1;
constexpr double kFeTolerance = 1e-7;

double fe_defect(const WeightTwoCoefficients& b, const std::vector<std::int8_t>& chi,
                 std::int64_t conductor, int w, std::int64_t terms) {
  const double sq = std::sqrt(static_cast<double>(conductor));
  const double lhs = weighted_sum<false>(b, chi, terms, kTwoPi / (kFeT * sq));
  const double rhs = w * kFeT * kFeT * weighted_sum<false>(b, chi, terms, kTwoPi * kFeT / sq);
  return std::fabs(lhs - rhs) / std::max(std::fabs(lhs), std::fabs(rhs));
}

}  // namespace

TwistSign twist_sign(const CurveSpec& spec, std::int64_t n, const WeightTwoCoefficients& b) {
  check_twist_factor(spec, n);
  const std::int64_t disc = twist_discriminant(n);
  const auto chi = character_table(disc);
  const std::int64_t guess = expected_conductor(spec, n);
  std::int64_t base = guess;
  while (base % 2 == 0) base /= 2;
  std::vector<std::int64_t> candidates{guess};
  for (std::int64_t f = 0, two = 1; f <= 8; ++f, two *= 2) {
    if (base * two != guess) candidates.push_back(base * two);
  }
  TwistSign best{0, 0, 1e300};
  for (auto N : candidates) {
    const double sq = std::sqrt(static_cast<double>(N));
    const std::int64_t terms = cutoff(kTwoPi / (kFeT * sq), 1e-13);
    if (terms > b.bound) continue;
    for (int w : {1, -1}) {
      const double d = fe_defect(b, chi, N, w, terms);
      if (d < best.defect) best = {w, N, d};
    }
    if (best.defect < kFeTolerance) return best;
  }
  throw Error(ErrorKind::convergence,
              "no conductor satisfies the functional equation for n = " + std::to_string(n));
}

std::int64_t terms_needed(const CurveSpec& spec, std::int64_t n, double precision) {
  const double sq = std::sqrt(static_cast<double>(expected_conductor(spec, n)));
  return std::max(cutoff(kTwoPi / sq, precision), cutoff(kTwoPi / (kFeT * sq), 1e-13));
}

namespace {

TwistLData l1_at(std::int64_t n, std::int64_t conductor, const WeightTwoCoefficients& b,
                 std::int64_t terms, double precision) {
  TwistLData out;
  out.disc = twist_discriminant(n);
  out.conductor_twist = conductor;
  const double scale = kTwoPi / std::sqrt(static_cast<double>(conductor));
  const std::int64_t need = cutoff(scale, precision);
  if (need > terms || need > b.bound) {
    throw Error(ErrorKind::convergence, "need " + std::to_string(need) + " terms for n = " +
                                            std::to_string(n) + ", have " +
                                            std::to_string(std::min(terms, b.bound)));
  }
  const auto chi = character_table(out.disc);
  out.l1 = 2.0 * weighted_sum<true>(b, chi, need, scale);
  out.terms_used = need;
  const double tail = 8.0 * std::exp(-scale * static_cast<double>(need + 1)) / -std::expm1(-scale);
  out.error_bound = tail + 1e-15 * static_cast<double>(need);
  out.consistent_with_zero = std::fabs(out.l1) < 10.0 * out.error_bound;
  return out;
}

}  // namespace

TwistLData twisted_l1(const CurveSpec& spec, std::int64_t n, const WeightTwoCoefficients& b,
                      std::int64_t terms, double precision) {
  const TwistSign sign = twist_sign(spec, n, b);
  if (sign.root_number != 1) {
    throw Error(ErrorKind::precondition,
                "root number -1 for n = " + std::to_string(n) + ": L(1) vanishes by parity");
  }
  return l1_at(n, sign.conductor, b, terms, precision);
}

TwistLData twisted_l1_assuming_sign(const CurveSpec& spec, std::int64_t n,
                                    const WeightTwoCoefficients& b, double precision) {
  check_twist_factor(spec, n);
  return l1_at(n, expected_conductor(spec, n), b, b.bound, precision);
}

std::int64_t l1_terms(const CurveSpec& spec, std::int64_t n, double precision) {
  return cutoff(kTwoPi / std::sqrt(static_cast<double>(expected_conductor(spec, n))), precision);
}

MinimalInvariants minimal_twist(const CurveSpec& spec, std::int64_t n) {
  check_twist_factor(spec, n);
  const auto inv = invariants(spec.weierstrass);
  const i128 D = twist_discriminant(n);
  // y^2 = x^3 - 27 c4 D^2 x - 54 c6 D^3 has invariants 6^4 c4 D^2 and 6^6 c6 D^3.
  MinimalInvariants m{1296 * inv.c4 * D * D, 46656 * inv.c6 * D * D * D};
  const auto integral_model = [](i128 c4, i128 c6) {
    // Kraus: c4^3 = c6^2 (mod 1728), v3(c6) != 2, and a 2-adic condition.
    const auto r4 = mod(c4, 1728), r6 = mod(c6, 1728);
    if (mod(static_cast<i128>(r4) * r4 % 1728 * r4 - static_cast<i128>(r6) * r6, 1728) != 0) return false;
    if (c6 % 9 == 0 && c6 % 27 != 0) return false;
    if (mod(c6, 4) == 3) return true;
    return c4 % 16 == 0 && (mod(c6, 32) == 0 || mod(c6, 32) == 8);
  };
  for (std::int64_t p : {2, 3}) {
    const i128 p4 = static_cast<i128>(p) * p * p * p, p6 = p4 * p * p;
    while (m.c4 % p4 == 0 && m.c6 % p6 == 0 && integral_model(m.c4 / p4, m.c6 / p6)) {
      m.c4 /= p4;
      m.c6 /= p6;
    }
  }
  return m;
}

namespace {

// Largest real root of 4x^3 - g2 x - g3: Cardano or the trigonometric form, then Newton.
long double largest_real_root(long double g2, long double g3) {
  const long double p = -g2 / 4, q = -g3 / 4;  // x^3 + p x + q
  const long double h = q * q / 4 + p * p * p / 27;
  long double x;
  if (h >= 0) {
    const long double r = std::sqrt(h);
    x = std::cbrt(-q / 2 + r) + std::cbrt(-q / 2 - r);
  } else {
    const long double m = 2 * std::sqrt(-p / 3);
    const long double c = std::clamp(3 * q / (p * m), -1.0L, 1.0L);
    x = m * std::cos(std::acos(c) / 3);
  }
  for (int i = 0; i < 4; ++i) {
    const long double f = 4 * x * x * x - g2 * x - g3;
    const long double df = 12 * x * x - g2;
    if (df == 0) break;
    x -= f / df;
  }
  return x;
}

long double agm(long double a, long double b) {
  for (int i = 0; i < 100; ++i) {
    const long double an = (a + b) / 2, bn = std::sqrt(a * b);
    if (std::fabs(an - bn) <= 8 * std::numeric_limits<long double>::epsilon() * an) return an;
    a = an;
    b = bn;
  }
  throw Error(ErrorKind::convergence, "AGM did not converge");
}

}  // namespace

long double period_agm(long double c4, long double c6) {
  const long double g2 = c4 / 12.0L, g3 = c6 / 216.0L;
  const long double e1 = largest_real_root(g2, g3);
  const long double pi = std::numbers::pi_v<long double>;
  if (c4 * c4 * c4 - c6 * c6 > 0) {
    // Three real roots; the other two solve 4x^2 + 4 e1 x + (4 e1^2 - g2) = 0.
    const long double disc = std::sqrt(std::max(0.0L, g2 - 3 * e1 * e1));
    const long double e2 = (-e1 + disc) / 2, e3 = (-e1 - disc) / 2;
    const long double omega = pi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
    return 2 * omega;
  }
  const long double beta = std::sqrt((12 * e1 * e1 - g2) / 4);
  return 2 * pi / agm(2 * std::sqrt(beta), std::sqrt(2 * beta + 3 * e1));
}

long double period_quadrature(long double c4, long double c6) {
  // With x = e1 + u^2: integral over [e1, inf) of dx / sqrt(4x^3 - g2 x - g3)
  // equals the integral over u >= 0 of du / sqrt(u^4 + 3 e1 u^2 + (12 e1^2 - g2) / 4).
  const long double g2 = c4 / 12.0L, g3 = c6 / 216.0L;
  const long double e1 = largest_real_root(g2, g3);
  const long double q = (12 * e1 * e1 - g2) / 4;
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  const auto f = [&](long double th) {
    if (th >= half_pi) return 1.0L;
    const long double u = std::tan(th), sec2 = 1 + u * u;
    return sec2 / std::sqrt(u * u * u * u + 3 * e1 * u * u + q);
  };
  const int steps = 200000;  // composite Simpson on theta in [0, pi/2]
  const long double h = half_pi / steps;
  long double s = f(0) + f(half_pi);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4 : 2) * f(i * h);
  const long double component = 2 * s * h / 3;
  return (c4 * c4 * c4 - c6 * c6 > 0) ? 2 * component : component;
}

double real_period(const CurveSpec& spec, std::int64_t n) {
  const auto m = minimal_twist(spec, n);
  return static_cast<double>(period_agm(static_cast<long double>(m.c4), static_cast<long double>(m.c6)));
}

int twist_tamagawa_log2(const CurveSpec& spec, std::int64_t n) {
  const auto inv = invariants(spec.weierstrass);
  int e = 0;
  for (auto p : prime_factors(n)) {
    const int roots = cubic_root_count(4, static_cast<std::int64_t>(mod(inv.b2, p)),
                                       static_cast<std::int64_t>(mod(2 * inv.b4, p)),
                                       static_cast<std::int64_t>(mod(inv.b6, p)), p);
    e += roots == 0 ? 0 : (roots == 1 ? 1 : 2);
  }
  return e;
}

BsdAssembly bsd_assemble(const CurveSpec& spec, std::int64_t n, std::int64_t tamagawa_bad,
                         const WeightTwoCoefficients& b) {
  BsdAssembly a;
  const auto L = twisted_l1(spec, n, b, b.bound);
  if (L.consistent_with_zero) {
    throw Error(ErrorKind::baseline_failure, "L(1) is numerically zero for n = " + std::to_string(n));
  }
  a.l1 = L.l1;
  a.period = real_period(spec, n);
  a.tamagawa = tamagawa_bad << twist_tamagawa_log2(spec, n);
  const double t = spec.family_torsion;
  a.sha = a.l1 * t * t / (a.period * static_cast<double>(a.tamagawa));
  a.selmer = spec.family_torsion * std::llround(a.sha);
  return a;
}

namespace {

std::int64_t checked_selmer(const CurveSpec& spec, std::int64_t n0, const BsdAssembly& a) {
  const double sha = std::round(a.sha);
  const auto where = spec.label + " class " + std::to_string(n0);
  if (sha < 1 || std::fabs(a.sha - sha) > 1e-6 * sha) {
    throw Error(ErrorKind::normalization,
                where + ": BSD quotient " + std::to_string(a.sha) + " is not an integer");
  }
  if (!is_perfect_square(static_cast<std::int64_t>(sha))) {
    throw Error(ErrorKind::normalization, where + ": Cassels violation, Sha = " + std::to_string(sha));
  }
  return a.selmer;
}

}  // namespace

std::int64_t baseline_selmer(const CurveSpec& spec, std::int64_t n0, const WeightTwoCoefficients& b) {
  const auto& cb = baseline(spec, n0);
  return checked_selmer(spec, n0, bsd_assemble(spec, cb.n0_effective, cb.tamagawa_bad, b));
}

ClassBaseline derive_baseline(const CurveSpec& spec, std::int64_t n0, const PowerSeries& F,
                              const WeightTwoCoefficients& b) {
  ClassBaseline out = baseline(spec, n0);
  const auto squarefree = [](std::int64_t m) {
    for (std::int64_t p = 2; p * p <= m; ++p) {
      if (m % (p * p) == 0) return false;
    }
    return true;
  };
  std::int64_t n = n0;
  while (n <= F.bound() && (!squarefree(n) || F[n] == 0)) n += spec.table_modulus;
  if (n > F.bound()) throw Error(ErrorKind::baseline_failure, "no nonzero coefficient in class");
  out.n0_effective = n;
  out.a_n0 = F[n];
  out.tamagawa_log2 = twist_tamagawa_log2(spec, n);
  const auto a = bsd_assemble(spec, n, out.tamagawa_bad, b);
  out.l_n0 = a.l1;
  out.selmer_n0 = checked_selmer(spec, n0, a);
  return out;
}

}  // namespace selmer
