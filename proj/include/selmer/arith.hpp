#pragma once

#include <cstdint>
#include <vector>

namespace selmer {

using i128 = __int128;

std::int64_t isqrt(std::int64_t n);
bool is_perfect_square(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);

// Exponent of p in x (x != 0).
int valuation(i128 x, std::int64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::int64_t invmod(std::int64_t a, std::int64_t m);
std::int64_t mod(i128 a, std::int64_t m);

bool is_prime(std::uint64_t n);

// Kronecker symbol (a/n) for any integer a and n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

// Square root mod an odd prime; a must be a nonzero quadratic residue.
std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p);

// Number of roots in F_p of c3 x^3 + c2 x^2 + c1 x + c0, p prime and c3 != 0 mod p.
int cubic_root_count(std::int64_t c3, std::int64_t c2, std::int64_t c1, std::int64_t c0,
                     std::int64_t p);

// Distinct prime factors, ascending.
std::vector<std::int64_t> prime_factors(std::int64_t n);

}  // namespace selmer
