#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gpseq {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

} // namespace gpseq
