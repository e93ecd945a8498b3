#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "selmer/bsd_oracle.hpp"
#include "selmer/catalog.hpp"
#include "selmer/sieve.hpp"
#include "support.hpp"

using namespace selmer;

TEST_CASE("table data") {
  const auto& e = curve("11a1");
  CHECK(e.table_modulus == 44);
  CHECK(e.class_reps == std::vector<std::int64_t>{1, 3, 5, 15, 23, 31, 37});
  CHECK(e.recipe.unary_t == 11);
  REQUIRE(e.recipe.terms.size() == 2);
  CHECK(e.recipe.terms[0].first == 1);
  CHECK(e.recipe.terms[0].second.c == 11);
  CHECK(e.recipe.terms[1].first == -1);
  CHECK((e.recipe.terms[1].second.a == 3 && e.recipe.terms[1].second.b == 2));

  const auto& f = curve("34a1");
  CHECK(f.table_modulus == 136);
  CHECK(f.class_reps == std::vector<std::int64_t>{1, 13, 19, 21, 33, 35, 43, 53, 59, 67, 69, 77,
                                                  83, 89, 93, 101, 115, 117, 123});
  CHECK(curve("14a1").table_modulus == 56);
  CHECK(curve("17a1").table_modulus == 68);
  CHECK(curve("20a1").table_modulus == 40);
  CHECK(error_kind([] { curve("37a1"); }) == ErrorKind::not_in_catalog);
  CHECK(error_kind([] { baseline(curve("11a1"), 7); }) == ErrorKind::invalid_class);
}

TEST_CASE("family torsion from the 2-division polynomial") {
  CHECK(rational_two_torsion(curve("11a1")) == 1);
  CHECK(rational_two_torsion(curve("14a1")) == 2);
  CHECK(rational_two_torsion(curve("17a1")) == 2);
  CHECK(rational_two_torsion(curve("20a1")) == 2);
  CHECK(rational_two_torsion(curve("34a1")) == 2);
  for (const auto& label : catalog_labels()) {
    CHECK(curve(label).family_torsion == rational_two_torsion(curve(label)));
  }
}

TEST_CASE("rational torsion divides every good point count") {
  const std::vector<std::pair<const char*, int>> expected{
      {"11a1", 5}, {"14a1", 6}, {"17a1", 4}, {"20a1", 6}, {"34a1", 6}};
  for (const auto& [label, t] : expected) {
    const auto& spec = curve(label);
    CHECK(spec.torsion_order == t);
    CHECK(spec.torsion_order % spec.family_torsion == 0);
    for (std::int64_t p = 3; p < 3000; p += 2) {
      if (!is_prime(p) || spec.conductor % p == 0) continue;
      INFO(label << " p=" << p);
      CHECK((p + 1 - count_ap_naive(spec, p)) % t == 0);
    }
  }
  auto bad = curve("11a1");
  bad.torsion_order = 10;
  CHECK(error_kind([&] { validate(bad); }) == ErrorKind::config);
}

TEST_CASE("every catalogued curve validates") {
  for (const auto& label : catalog_labels()) {
    INFO(label);
    CHECK_NOTHROW(validate(curve(label)));
  }
}

TEST_CASE("class reps are members of their own class") {
  const auto sieve = build_sieve(1000);
  for (const auto& label : catalog_labels()) {
    const auto& spec = curve(label);
    for (auto n0 : spec.class_reps) {
      const auto members = class_members(sieve, n0, spec.table_modulus, 1000);
      REQUIRE_FALSE(members.empty());
      // 34a1's listed rep 117 = 9 * 13 is not squarefree; its class starts at 253.
      CHECK(members.front() == (sieve.squarefree(n0) ? n0 : n0 + spec.table_modulus));
    }
  }
}

TEST_CASE("baselines re-derive from the oracle") {
  for (const auto& label : catalog_labels()) {
    const auto& spec = curve(label);
    std::int64_t top = 0, terms = 0;
    for (const auto& b : spec.baselines) {
      top = std::max(top, b.n0_effective);
      terms = std::max(terms, terms_needed(spec, b.n0_effective));
    }
    const auto F = build_F(spec.recipe, top);
    const auto w = expand_b(spec, terms);
    for (const auto& cached : spec.baselines) {
      INFO(label << " class " << cached.n0);
      const auto fresh = derive_baseline(spec, cached.n0, F, w);
      CHECK(fresh.n0_effective == cached.n0_effective);
      CHECK(fresh.a_n0 == cached.a_n0);
      CHECK(fresh.selmer_n0 == cached.selmer_n0);
      CHECK(fresh.tamagawa_log2 == cached.tamagawa_log2);
      CHECK(std::abs(fresh.l_n0 - cached.l_n0) <= 1e-9 * cached.l_n0);
    }
  }
}

TEST_CASE("11a1 hand-checked baselines") {
  const auto& spec = curve("11a1");
  CHECK(baseline(spec, 3).a_n0 == -2);
  CHECK(baseline(spec, 1).n0_effective == 1);
  CHECK(baseline(spec, 1).a_n0 == 2);
}

TEST_CASE("overrides") {
  const auto& spec = curve("11a1");
  const auto changed = apply_overrides(spec,
                                       "# experiment\n"
                                       "11a1.3.selmer_n0 = 9   # trailing comment\n"
                                       "14a1.1.selmer_n0 = 50\n"
                                       "11a1.5.l_n0=0.5\n");
  CHECK(baseline(changed, 3).selmer_n0 == 9);
  CHECK(baseline(changed, 5).l_n0 == 0.5);
  CHECK(baseline(changed, 1).selmer_n0 == baseline(spec, 1).selmer_n0);

  CHECK(error_kind([&] { apply_overrides(spec, "11a1.3.selmer_n0 9"); }) == ErrorKind::config);
  CHECK(error_kind([&] { apply_overrides(spec, "11a1.4.selmer_n0 = 9"); }) == ErrorKind::config);
  CHECK(error_kind([&] { apply_overrides(spec, "11a1.3.colour = 9"); }) == ErrorKind::config);
  CHECK(error_kind([&] { apply_overrides(spec, "11a1.3.a_n0 = two"); }) == ErrorKind::config);

  const std::string path = "override_test.txt";
  {
    std::ofstream out(path);
    out << "11a1.1.a_n0 = 6\n";
  }
  CHECK(baseline(apply_override_file(spec, path), 1).a_n0 == 6);
  std::remove(path.c_str());
  CHECK(error_kind([&] { apply_override_file(spec, "no/such/file"); }) == ErrorKind::io);
}

TEST_CASE("validation catches a corrupted baseline") {
  auto bad = apply_overrides(curve("14a1"), "14a1.15.selmer_n0 = 6\n");
  CHECK(error_kind([&] { validate(bad); }) == ErrorKind::config);
  auto zero = apply_overrides(curve("20a1"), "20a1.21.a_n0 = 0\n");
  CHECK(error_kind([&] { validate(zero); }) == ErrorKind::config);
}
