#pragma once

// Integer helpers shared by the chain, group and supernatural code.
// Everything works on unsigned 64-bit values; products go through 128-bit
// intermediates so residues never overflow.

#include <cstdint>
#include <map>
#include <optional>

namespace lph {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

/// a*b, or nullopt when the product does not fit in 64 bits.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);

/// Least common multiple; throws std::overflow_error if it does not fit.
std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

/// Floor residue of a signed integer: the unique r in [0, n) with k = r (mod n).
std::uint64_t floor_mod(std::int64_t k, std::uint64_t n);
std::uint64_t floor_mod(i128 k, std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Prime factorization p -> exponent. factorize(1) is empty; factorize(0) throws.
std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n);

/// Number of bits needed to write n (0 for n == 0).
unsigned bit_width_u64(std::uint64_t n);

}  // namespace lph
