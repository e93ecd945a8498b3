#include "selmer/waldspurger.hpp"

#include <cmath>
#include <string>

#include "selmer/error.hpp"

namespace selmer {

Rational d_ratio(int omega_n, int omega_n0) {
  const int e = omega_n0 - omega_n;
  return e >= 0 ? Rational{i128{1} << (2 * e), 1} : Rational{1, i128{1} << (-2 * e)};
}

TamagawaTable build_tamagawa_table(const CurveSpec& spec, const SieveTables& sieve,
                                   TamagawaRule rule) {
  TamagawaTable t;
  t.rule = rule;
  t.log2.assign(static_cast<std::size_t>(sieve.bound + 1), 0);
  if (rule == TamagawaRule::uniform_four) {
    for (std::int64_t n = 1; n <= sieve.bound; ++n) {
      t.log2[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(2 * sieve.omega_of(n));
    }
    return t;
  }
  const auto inv = invariants(spec.weierstrass);
  for (const auto p : sieve.primes) {
    // Primes of 2N never divide a class member; their entries are left untouched.
    if (p == 2 || spec.conductor % p == 0) continue;
    const int roots = cubic_root_count(4, mod(inv.b2, p), mod(2 * inv.b4, p), mod(inv.b6, p), p);
    const int e = roots == 0 ? 0 : (roots == 1 ? 1 : 2);
    if (e == 0) continue;
    for (std::int64_t m = p; m <= sieve.bound; m += p) {
      t.log2[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(t.log2[static_cast<std::size_t>(m)] + e);
    }
  }
  return t;
}

TwistResult evaluate_twist(std::int64_t n, std::int64_t a_n, const ClassBaseline& baseline,
                           int family_torsion, const TamagawaTable& tamagawa) {
  if (baseline.a_n0 == 0) throw Error(ErrorKind::precondition, "baseline coefficient is zero");
  TwistResult r;
  r.n = n;
  r.a_n = a_n;
  if (a_n == 0) return r;

  const int e = tamagawa.at(n), e0 = tamagawa.at(baseline.n0_effective);
  const i128 an2 = static_cast<i128>(a_n) * a_n, a02 = static_cast<i128>(baseline.a_n0) * baseline.a_n0;
  i128 num = static_cast<i128>(baseline.selmer_n0) * an2;
  i128 den = a02;
  if (e0 >= e) {
    num <<= (e0 - e);
  } else {
    den <<= (e - e0);
  }
  if (num % den != 0 || (num / den) % family_torsion != 0) {
    throw Error(ErrorKind::integrality, "twist n = " + std::to_string(n) + " relative to n0 = " +
                                            std::to_string(baseline.n0_effective) +
                                            " gives a non-integral Selmer order");
  }
  const i128 selmer = num / den;
  if (selmer > static_cast<i128>(INT64_MAX)) throw Error(ErrorKind::overflow, "Selmer order");
  r.status = RankStatus::rank_zero;
  r.selmer = static_cast<std::int64_t>(selmer);
  r.k = r.selmer / family_torsion;
  r.l_value = propagate_l(n, a_n, baseline);
  return r;
}

double propagate_l(std::int64_t n, std::int64_t a_n, const ClassBaseline& baseline) {
  if (a_n == 0) throw Error(ErrorKind::precondition, "propagate_l needs a nonzero coefficient");
  if (n == baseline.n0_effective && (a_n == baseline.a_n0 || a_n == -baseline.a_n0)) return baseline.l_n0;
  const double ratio = static_cast<double>(a_n) / static_cast<double>(baseline.a_n0);
  return baseline.l_n0 * ratio * ratio *
         std::sqrt(static_cast<double>(baseline.n0_effective) / static_cast<double>(n));
}

}  // namespace selmer
