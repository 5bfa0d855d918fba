#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sandpile {

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Residue of a modulo m, normalized to [0, m).
std::int64_t mod(std::int64_t a, std::int64_t m);

bool is_prime(std::uint64_t n);

// Prime factorization by trial division; (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// Largest power of p dividing n (pi_p(n)); v_p(n) via the second overload.
std::uint64_t prime_power_part(std::uint64_t n, std::uint64_t p);
unsigned valuation(std::uint64_t n, std::uint64_t p);

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace sandpile
