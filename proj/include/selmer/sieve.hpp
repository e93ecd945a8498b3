#pragma once

#include <cstdint>
#include <vector>

namespace selmer {

struct SieveTables {
  std::int64_t bound = 0;
  std::vector<std::uint64_t> squarefree_bits;  // bit n set iff n squarefree
  std::vector<std::uint8_t> omega;              // number of distinct prime divisors
  std::vector<std::int64_t> primes;             // all primes <= bound

  bool squarefree(std::int64_t n) const {
    return (squarefree_bits[static_cast<std::size_t>(n) >> 6] >> (n & 63)) & 1u;
  }
  int omega_of(std::int64_t n) const { return omega[static_cast<std::size_t>(n)]; }
  std::int64_t squarefree_count(std::int64_t limit) const;
};

SieveTables build_sieve(std::int64_t bound);

// Squarefree n <= limit with n = n0 (mod modulus), ascending.
std::vector<std::int64_t> class_members(const SieveTables& tables, std::int64_t n0,
                                        std::int64_t modulus, std::int64_t limit);

}  // namespace selmer
