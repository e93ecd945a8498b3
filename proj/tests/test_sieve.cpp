#include <doctest.h>

#include <random>

#include "selmer/arith.hpp"
#include "selmer/sieve.hpp"
#include "support.hpp"

using namespace selmer;

namespace {

bool squarefree_trial(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

int omega_trial(std::int64_t n) {
  int w = 0;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ++w;
    while (n % p == 0) n /= p;
  }
  return w + (n > 1);
}

}  // namespace

TEST_CASE("sieve basics") {
  const auto t = build_sieve(100);
  CHECK(t.squarefree(1));
  CHECK(t.omega_of(1) == 0);
  CHECK_FALSE(t.squarefree(12));
  CHECK(t.squarefree(15));
  CHECK(t.omega_of(15) == 2);
  CHECK(t.primes.size() == 25);
  CHECK(error_kind([] { build_sieve(0); }) == ErrorKind::range);
}

TEST_CASE("squarefree count up to 1e4 against trial division") {
  const auto t = build_sieve(10000);
  std::int64_t count = 0;
  for (std::int64_t n = 1; n <= 10000; ++n) {
    CHECK(t.squarefree(n) == squarefree_trial(n));
    count += squarefree_trial(n);
  }
  CHECK(count == 6083);
  CHECK(t.squarefree_count(10000) == 6083);
}

TEST_CASE("omega against trial division on random n") {
  const auto t = build_sieve(100000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> pick(1, 100000);
  for (int i = 0; i < 5000; ++i) {
    const auto n = pick(rng);
    CHECK(t.omega_of(n) == omega_trial(n));
  }
  for (std::int64_t p = 2; p < 300; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t m = p * p; m <= 100000; m += p * p) CHECK_FALSE(t.squarefree(m));
  }
}

TEST_CASE("class members") {
  const auto t = build_sieve(1'000'000);
  CHECK(class_members(t, 1, 44, 100) == std::vector<std::int64_t>{1, 89});
  CHECK(class_members(t, 3, 44, 50) == std::vector<std::int64_t>{3, 47});
  CHECK(error_kind([&] { class_members(t, 2, 44, 100); }) == ErrorKind::invalid_class);
  CHECK(error_kind([&] { class_members(t, 1, 44, 2'000'000); }) == ErrorKind::range);

  const auto members = class_members(t, 1, 44, 1'000'000);
  std::int64_t x1 = 0;
  for (std::int64_t n = 1; n <= 1'000'000; n += 44) x1 += squarefree_trial(n);
  CHECK(static_cast<std::int64_t>(members.size()) == x1);
  CHECK(x1 == 18574);
  for (std::size_t i = 1; i < members.size(); ++i) CHECK(members[i - 1] < members[i]);
  for (auto n : members) CHECK((n % 44 == 1 && t.squarefree(n)));
}
