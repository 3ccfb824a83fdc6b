#pragma once

#include <cstdint>
#include <vector>

namespace rprime {

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

// All primes p <= limit in ascending order (odd-only sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace rprime
