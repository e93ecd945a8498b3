#pragma once

#include <cstdint>
#include <vector>

#include "selmer/catalog.hpp"
#include "selmer/qseries.hpp"

namespace selmer {

struct WeightTwoCoefficients {
  std::int64_t bound = 0;
  std::vector<std::int32_t> b;  // b[m] for 0 <= m <= bound; b[0] unused
};

struct TwistLData {
  std::int64_t disc = 0;
  std::int64_t conductor_twist = 0;
  double l1 = 0.0;
  double error_bound = 0.0;       // truncation tail plus rounding
  bool consistent_with_zero = false;
  std::int64_t terms_used = 0;
};

// a_p for a prime p: p + 1 - #E(F_p) on the catalogued model, so bad primes give
// the local coefficient 1, -1 or 0.
std::int64_t count_ap(const CurveSpec& spec, std::int64_t p);

// Reference point count by summing Legendre symbols (O(p)); used for small p and tests.
std::int64_t count_ap_naive(const CurveSpec& spec, std::int64_t p);

WeightTwoCoefficients expand_b(const CurveSpec& spec, std::int64_t bound);

// Fundamental discriminant of Q(sqrt(-n)) for squarefree n.
std::int64_t twist_discriminant(std::int64_t n);

// Sign w of the functional equation of the twist and the conductor it was found at.
struct TwistSign {
  int root_number = 0;
  std::int64_t conductor = 0;
  double defect = 0.0;
};
TwistSign twist_sign(const CurveSpec& spec, std::int64_t n, const WeightTwoCoefficients& b);

// L(E_{-n}, 1) by the exponentially weighted series. `terms` caps the work; the
// caller's coefficient table must reach the number of terms actually needed.
TwistLData twisted_l1(const CurveSpec& spec, std::int64_t n, const WeightTwoCoefficients& b,
                      std::int64_t terms, double precision = 1e-12);

// Same sum at the conductor predicted by the twist rule with root number +1, skipping
// the functional-equation search. For large n where that search is too costly; the
// rule itself is checked by twist_sign on smaller members of each class.
TwistLData twisted_l1_assuming_sign(const CurveSpec& spec, std::int64_t n,
                                    const WeightTwoCoefficients& b, double precision = 1e-12);
// Coefficient count the L(1) sum alone needs for n (no functional-equation check).
std::int64_t l1_terms(const CurveSpec& spec, std::int64_t n, double precision = 1e-12);

struct MinimalInvariants {
  i128 c4 = 0;
  i128 c6 = 0;
};
// (c4, c6) of a minimal model of the twist by -n.
MinimalInvariants minimal_twist(const CurveSpec& spec, std::int64_t n);

// Real period of a curve given by integral (c4, c6); AGM.
long double period_agm(long double c4, long double c6);
// Same quantity by direct quadrature; slow, for tests.
long double period_quadrature(long double c4, long double c6);

double real_period(const CurveSpec& spec, std::int64_t n);

// log2 of the product of Tamagawa numbers over primes p | n, n squarefree and
// coprime to 2N: each such c_p is 1 + #roots of the 2-division cubic mod p.
int twist_tamagawa_log2(const CurveSpec& spec, std::int64_t n);

struct BsdAssembly {
  double l1 = 0.0;
  double period = 0.0;
  std::int64_t tamagawa = 1;
  double sha = 0.0;        // analytic order of Sha
  std::int64_t selmer = 0; // family_torsion * round(sha)
};
BsdAssembly bsd_assemble(const CurveSpec& spec, std::int64_t n, std::int64_t tamagawa_bad,
                         const WeightTwoCoefficients& b);

// Selmer order of the class baseline from scratch; normalization error if the BSD
// quotient is not within 1e-6 of an integer, Cassels failure if not a square.
std::int64_t baseline_selmer(const CurveSpec& spec, std::int64_t n0, const WeightTwoCoefficients& b);

// Full baseline derivation: effective rep and coefficient read from F.
ClassBaseline derive_baseline(const CurveSpec& spec, std::int64_t n0, const PowerSeries& F,
                              const WeightTwoCoefficients& b);

// Coefficient bound twisted_l1 needs for n at the given precision.
std::int64_t terms_needed(const CurveSpec& spec, std::int64_t n, double precision = 1e-12);

}  // namespace selmer
