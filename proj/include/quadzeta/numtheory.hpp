#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quadzeta/rational.hpp"

namespace qz {

// Exact prime factorization, primes strictly increasing; the product of
// prime^exp equals value. factorize(1) has an empty factor list.
struct Factorization {
    Int value;
    std::vector<std::pair<Int, unsigned>> factors;
};

std::uint64_t isqrt_u64(std::uint64_t n);
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n);

// Deterministic for all 64-bit inputs (fixed Miller-Rabin base set); larger
// inputs use GMP's probable-prime test, which has no known counterexamples.
bool is_prime_u64(std::uint64_t n);
bool is_prime(const Int& n);

// Primes below 2^16, built once on first use (thread-safe, read-only after).
const std::vector<std::uint32_t>& small_primes();

Factorization factorize(const Int& m);
Int sigma(const Int& m);
bool is_squarefree(const Int& m);
std::vector<Int> odd_prime_divisors(const Int& n);

// Default cap on sigma_sieve size: 4e7 entries (320 MB of u64).
inline constexpr std::uint64_t kDefaultSieveBudget = 40'000'000;

// table[m] = sigma(m) for 1 <= m <= limit; table[0] = 0. Rejects limits
// above the entry budget with Errc::budget_exceeded.
std::vector<std::uint64_t> sigma_sieve(std::uint64_t limit,
                                       std::uint64_t budget_entries = kDefaultSieveBudget);

} // namespace qz
