// Exact natural densities of constrained square-free integers. The density
// of the unconstrained square-free integers is 6/pi^2; requiring the primes
// in T and forbidding a finite set P scales it by the exact rational
//   prod_{p in T} 1/(1+p) * prod_{p in P} p/(1+p).
#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>

#include "sqf/big_rational.hpp"
#include "sqf/constraint.hpp"

namespace sqf {

// Density of the square-free integers.
inline constexpr double kSquarefreeDensity =
    6.0 / (std::numbers::pi * std::numbers::pi);

// Thrown when an exact density is requested for a residue-class forbidden
// set. That density is 0 in the limit; use the products module
// (partial_product, truncation_for_epsilon) for the decay evidence.
class ClassForbiddenError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DensityValue {
  BigRational factor;            // exact product part, in (0, 1]
  double value = 0.0;            // factor * 6/pi^2
  BigRational among_squarefree;  // proportion within the square-free integers
};

// Exact product part of the density. Requires an explicit finite forbidden
// set; throws ClassForbiddenError for residue-class selectors.
BigRational density_factor(const PrimeConstraint& c);

DensityValue density(const PrimeConstraint& c);

// Two independent evaluations of the same quantity: the sum of prod_{p in S} p
// over all subsets S of T, and the product of (1+p) over T. Equality is the
// divisor-sum identity sum_{d | prod T} d = prod (1+p); callers assert it.
std::pair<BigInt, BigInt> divisor_sum_check(std::span<const std::uint64_t> t);

}  // namespace sqf
