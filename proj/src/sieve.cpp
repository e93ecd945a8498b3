#include "selmer/sieve.hpp"

#include <bit>

#include "selmer/arith.hpp"
#include "selmer/error.hpp"

namespace selmer {

SieveTables build_sieve(std::int64_t bound) {
  if (bound < 1) throw Error(ErrorKind::range, "sieve bound must be >= 1");
  SieveTables t;
  t.bound = bound;
  const auto size = static_cast<std::size_t>(bound + 1);
  t.squarefree_bits.assign((size + 63) / 64, ~std::uint64_t{0});
  t.omega.assign(size, 0);
  t.squarefree_bits[0] &= ~std::uint64_t{1};  // 0 is not a member

  // omega doubles as the compositeness marker: a prime is reached with omega == 0.
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (t.omega[static_cast<std::size_t>(p)] != 0) continue;
    t.primes.push_back(p);
    for (std::int64_t m = p; m <= bound; m += p) ++t.omega[static_cast<std::size_t>(m)];
    if (p <= bound / p) {
      for (std::int64_t m = p * p; m <= bound; m += p * p) {
        t.squarefree_bits[static_cast<std::size_t>(m) >> 6] &= ~(std::uint64_t{1} << (m & 63));
      }
    }
  }
  return t;
}

std::int64_t SieveTables::squarefree_count(std::int64_t limit) const {
  if (limit > bound) throw Error(ErrorKind::range, "limit beyond sieve bound");
  std::int64_t count = 0;
  const auto full = static_cast<std::size_t>(limit + 1) / 64;
  for (std::size_t w = 0; w < full; ++w) count += std::popcount(squarefree_bits[w]);
  for (std::int64_t n = static_cast<std::int64_t>(full * 64); n <= limit; ++n) {
    count += squarefree(n) ? 1 : 0;
  }
  return count;
}

std::vector<std::int64_t> class_members(const SieveTables& tables, std::int64_t n0,
                                        std::int64_t modulus, std::int64_t limit) {
  if (modulus < 2 || n0 < 1 || n0 >= modulus || gcd(n0, modulus) != 1) {
    throw Error(ErrorKind::invalid_class,
                std::to_string(n0) + " is not a unit mod " + std::to_string(modulus));
  }
  if (limit > tables.bound) throw Error(ErrorKind::range, "limit beyond sieve bound");
  std::vector<std::int64_t> out;
  for (std::int64_t n = n0; n <= limit; n += modulus) {
    if (tables.squarefree(n)) out.push_back(n);
  }
  return out;
}

}  // namespace selmer
