// Counting square-free integers under divisibility constraints by three
// independent routes: a per-integer factorization oracle (small x), a
// segmented sieve (large x, memory bounded by the segment size), and the
// Mobius identity sum mu(d) floor(x/d^2) for the unconstrained count.
//
// A query (x, T, P) is reduced through multiplication by s = prod T: the
// sieve counts k <= x/s that are square-free, coprime to s, and divisible
// by no forbidden prime.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sqf/constraint.hpp"

namespace sqf {

struct CountQuery {
  std::uint64_t x = 0;
  PrimeConstraint constraint;
};

struct CountOptions {
  unsigned threads = 1;
  // Hard cap on x for sieve-based counts.
  std::uint64_t max_x = 10'000'000'000ull;
};

// Caps chosen so each route stays within its intended time/memory envelope.
inline constexpr std::uint64_t kNaiveCountCap = 1'000'000;
inline constexpr std::uint64_t kMobiusCountCap = 100'000'000'000'000ull;

// Brute-force oracle: factors every n <= x via a smallest-prime-factor
// table and tests membership directly. Requires x <= kNaiveCountCap.
std::uint64_t count_naive(const CountQuery& q);

// Segmented sieve count; equals count_naive wherever both are defined.
std::uint64_t count_sieve(const CountQuery& q, const CountOptions& opt = {});

// Unconstrained square-free count via sum_{d<=sqrt(x)} mu(d) floor(x/d^2).
std::uint64_t count_squarefree_mobius(std::uint64_t x);

// Both sides of the counting identity behind the reduction: with
// s = prod(extra), counts of (mandatory, extra+forbidden) up to x equal
// counts of (mandatory+extra, forbidden) up to x*s. Exact; callers assert
// equality. All three sets must be explicit, pairwise disjoint; extra
// nonempty.
std::pair<std::uint64_t, std::uint64_t> bijection_identity(
    std::uint64_t x, std::span<const std::uint64_t> mandatory,
    std::span<const std::uint64_t> extra,
    std::span<const std::uint64_t> forbidden, const CountOptions& opt = {});

// The unconstrained count up to x alongside its partition into the 2^|T|
// counts of (T\S, S) over subsets S of T, in subset-mask order. Callers
// assert total == sum(parts).
std::pair<std::uint64_t, std::vector<std::uint64_t>> partition_identity(
    std::uint64_t x, std::span<const std::uint64_t> t, const CountOptions& opt = {});

struct CountReport {
  CountQuery query;
  std::uint64_t count = 0;
  double ratio = 0.0;      // count / x, 0 when x = 0
  double predicted = 0.0;  // exact density, or the partial-product bound
  double deviation = 0.0;  // ratio - predicted
  // True when the forbidden set is a residue class: `predicted` is then the
  // decaying upper bound at cutoff x, not a limit value.
  bool predicted_is_bound = false;
};

CountReport empirical_density(const CountQuery& q, const CountOptions& opt = {});

}  // namespace sqf
