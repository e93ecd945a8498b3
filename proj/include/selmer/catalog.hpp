#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/qseries.hpp"

namespace selmer {

// Standard invariants of a long Weierstrass model.
struct Invariants {
  i128 b2, b4, b6, b8, c4, c6, disc;
};
Invariants invariants(const std::array<std::int64_t, 5>& a);

struct ClassBaseline {
  std::int64_t n0 = 0;
  std::int64_t n0_effective = 0;
  std::int64_t a_n0 = 0;
  std::int64_t selmer_n0 = 0;
  double l_n0 = 0.0;
  // log2 of the product of Tamagawa numbers at primes dividing n0_effective.
  int tamagawa_log2 = 0;
  // Product of Tamagawa numbers at the primes of 2N for the twist by -n0_effective.
  std::int64_t tamagawa_bad = 1;
};

struct CurveSpec {
  std::string label;
  std::int64_t conductor = 0;
  std::array<std::int64_t, 5> weierstrass{};
  std::int64_t table_modulus = 0;
  std::vector<std::int64_t> class_reps;
  ThetaRecipe recipe;
  int family_torsion = 1;
  // Order of the rational torsion subgroup.
  int torsion_order = 1;
  std::vector<ClassBaseline> baselines;  // parallel to class_reps
};

const std::vector<std::string>& catalog_labels();
const CurveSpec& curve(std::string_view label);
const ClassBaseline& baseline(const CurveSpec& spec, std::int64_t n0);

// 1 + number of rational roots of the 2-division polynomial.
int rational_two_torsion(const CurveSpec& spec);

// Structural checks plus Hasse bounds on a_p; throws on the first violation.
void validate(const CurveSpec& spec);

// Lines of the form `curve.class.field = value`; '#' starts a comment.
// Entries naming other curves are ignored.
CurveSpec apply_overrides(CurveSpec spec, std::string_view text);
CurveSpec apply_override_file(CurveSpec spec, const std::string& path);

}  // namespace selmer
