// Prime generation and factorization services: segmented Eratosthenes,
// primes restricted to a residue class, and per-integer oracles
// (primality, square-freeness, smallest prime factor).
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sqf {

// Flags per sieve segment; keeps the working set inside L2.
inline constexpr std::uint64_t kSegmentFlags = 1u << 18;

// The primes p with p % modulus == residue.
struct ResidueClass {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;

  ResidueClass() = default;
  ResidueClass(std::uint64_t m, std::uint64_t r);

  bool contains(std::uint64_t n) const { return n % modulus == residue; }
  // gcd(residue, modulus) == 1; required by every density-related operation.
  bool is_coprime() const;
};

// All primes <= limit, strictly increasing.
struct PrimeList {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
};

PrimeList primes_up_to(std::uint64_t limit);
PrimeList primes_in_class(const ResidueClass& c, std::uint64_t limit);

// Streams primes in [2, limit] in increasing order without materializing
// the whole list. The visitor returns false to stop early.
void for_each_prime(std::uint64_t limit,
                    const std::function<bool(std::uint64_t)>& visit);

// Deterministic Miller-Rabin, valid for every 64-bit n.
bool is_prime(std::uint64_t n);

// True iff no prime square divides n. Requires n >= 1.
bool is_squarefree(std::uint64_t n);

// Requires n >= 2 (1 has no prime factor).
std::uint64_t smallest_prime_factor(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t m);

}  // namespace sqf
