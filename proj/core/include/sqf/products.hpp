// Analysis of the prime product prod p/(1+p) over a selector: exact partial
// products with a log-space tail, the telescoping-sum identity, the
// log-vs-reciprocal-sum bound, epsilon truncation, and reciprocal sums over
// primes in an arithmetic progression compared against log log M / phi(m).
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sqf/big_rational.hpp"
#include "sqf/constraint.hpp"

namespace sqf {

// Exact partials are carried for at most this many factors; afterwards the
// trace continues in log space only (numerators and denominators grow
// without bound, the log preserves every monotonicity and bound check).
inline constexpr std::size_t kDefaultExactFactorLimit = 10000;

struct ProductEntry {
  std::uint64_t prime = 0;
  std::optional<BigRational> partial;  // exact partial product, while carried
  double log_partial = 0.0;            // natural log of the partial product
};

struct ProductTrace {
  PrimeSelector selector;
  std::uint64_t limit = 0;  // enumeration cutoff: primes <= limit
  std::vector<ProductEntry> entries;
  std::size_t exact_entries = 0;  // prefix length that carries exact partials

  bool empty() const { return entries.empty(); }
  // Log of the full partial product; 0 for the empty product.
  double final_log() const { return empty() ? 0.0 : entries.back().log_partial; }
  double final_value() const;
  // Exact final partial when the whole trace fits the exact budget;
  // the empty product is exactly 1.
  std::optional<BigRational> final_exact() const;
};

// Partial product over the selector's primes <= limit, one entry per prime.
// Class selectors must satisfy gcd(r, m) = 1.
ProductTrace partial_product(const PrimeSelector& selector, std::uint64_t limit,
                             std::size_t exact_limit = kDefaultExactFactorLimit);

// Log of the partial product over the selector's primes <= limit, streamed
// without building a trace.
double log_partial_product(const PrimeSelector& selector, std::uint64_t limit);

// Both sides of the telescoping identity over the first `terms` primes of
// the selector:
//   sum_{k<=L} 1/(1+p_k) prod_{i<k} p_i/(1+p_i)  ==  1 - prod_{i<=L} p_i/(1+p_i).
// Returned exactly; callers assert equality.
std::pair<BigRational, BigRational> telescoping_check(
    const PrimeSelector& selector, std::uint64_t terms);

struct LogBoundPair {
  double neg_log_product = 0.0;      // -log prod_{p<=M} p/(1+p)
  double half_reciprocal_sum = 0.0;  // (1/2) sum_{p<=M} 1/p
};

// For every nonempty selector the first component strictly exceeds the
// second (termwise log(1+1/p) > 1/(2p)); callers assert it.
LogBoundPair log_product_bound(const PrimeSelector& selector, std::uint64_t limit);

struct TruncationPoint {
  std::uint64_t cutoff = 0;  // least M with bound(M) <= epsilon
  double bound = 0.0;        // achieved (6/pi^2) * prod_{p<=M} p/(1+p)
};

// Least enumeration cutoff M such that (6/pi^2) times the partial product
// over class primes <= M is at most epsilon. Requires 0 < epsilon < 6/pi^2
// and gcd(r, m) = 1. Aborts with a diagnostic if M would exceed hard_cap.
TruncationPoint truncation_for_epsilon(const ResidueClass& cls, double epsilon,
                                       std::uint64_t hard_cap = 1'000'000'000);

struct ApReciprocalSum {
  double sum = 0.0;        // sum of 1/p over class primes <= limit
  double reference = 0.0;  // log log limit / phi(m)
  double deviation = 0.0;  // sum - reference
};

// Reciprocal sum over primes p <= limit with p = r (mod m), against the
// Mertens-type reference log log limit / phi(m). Requires limit >= 3 and
// gcd(r, m) = 1.
ApReciprocalSum ap_reciprocal_sum(const ResidueClass& cls, std::uint64_t limit);

}  // namespace sqf
