#pragma once

#include <cstdint>
#include <vector>

#include "selmer/catalog.hpp"
#include "selmer/sieve.hpp"

namespace selmer {

enum class RankStatus { positive_rank, rank_zero };

struct TwistResult {
  std::int64_t n = 0;
  std::int64_t a_n = 0;
  RankStatus status = RankStatus::positive_rank;
  std::int64_t selmer = 0;  // 0 when positive_rank
  std::int64_t k = 0;       // 0 iff positive_rank
  double l_value = 0.0;     // 0 when positive_rank

  bool operator==(const TwistResult&) const = default;
};

struct Rational {
  i128 num = 0;
  i128 den = 1;
  bool operator==(const Rational&) const = default;
};

// 4^(omega_n0 - omega_n): the correction when every c_p at p | n is taken to be 4.
Rational d_ratio(int omega_n, int omega_n0);

// Which Tamagawa numbers enter the transfer at primes dividing the twist factor.
enum class TamagawaRule {
  kodaira,      // c_p = 1 + #roots of the 2-division cubic mod p (type I0*)
  uniform_four  // c_p = 4 for every p | n
};

// Per-n log2 of the product of c_p over p | n, for all n <= bound.
struct TamagawaTable {
  TamagawaRule rule = TamagawaRule::kodaira;
  std::vector<std::uint8_t> log2;
  int at(std::int64_t n) const { return log2[static_cast<std::size_t>(n)]; }
};
TamagawaTable build_tamagawa_table(const CurveSpec& spec, const SieveTables& sieve,
                                   TamagawaRule rule = TamagawaRule::kodaira);

// Selmer transfer from the class baseline; integrality error if the result or
// result / t is not an integer.
TwistResult evaluate_twist(std::int64_t n, std::int64_t a_n, const ClassBaseline& baseline,
                           int family_torsion, const TamagawaTable& tamagawa);

double propagate_l(std::int64_t n, std::int64_t a_n, const ClassBaseline& baseline);

}  // namespace selmer
