#include "sqf/density.hpp"

#include <vector>

namespace sqf {

BigRational density_factor(const PrimeConstraint& c) {
  if (c.forbidden().is_class())
    throw ClassForbiddenError(
        "density_factor: forbidden set is a residue class; its density is 0 "
        "in the limit -- use the products module for partial-product bounds");
  BigRational factor(1);
  for (std::uint64_t t : c.mandatory()) factor *= BigRational(1, BigInt(t) + 1);
  for (std::uint64_t p : c.forbidden().primes()) factor.mul_prime_ratio(p);
  return factor;
}

DensityValue density(const PrimeConstraint& c) {
  DensityValue d;
  d.factor = density_factor(c);
  d.value = d.factor.to_double() * kSquarefreeDensity;
  d.among_squarefree = d.factor;
  return d;
}

std::pair<BigInt, BigInt> divisor_sum_check(std::span<const std::uint64_t> t) {
  std::vector<std::uint64_t> primes = checked_prime_set(
      std::vector<std::uint64_t>(t.begin(), t.end()), "divisor_sum_check");
  if (primes.size() > 24)
    throw std::invalid_argument("divisor_sum_check: set too large to enumerate");

  // Left side: enumerate every subset S and sum prod_{p in S} p.
  BigInt subset_sum = 0;
  const std::size_t n = primes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    BigInt d = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) d *= primes[i];
    subset_sum += d;
  }

  // Right side: the closed form prod (1+p).
  BigInt product = 1;
  for (std::uint64_t p : primes) product *= BigInt(p) + 1;

  return {subset_sum, product};
}

}  // namespace sqf
