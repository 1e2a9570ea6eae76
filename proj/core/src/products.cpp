#include "sqf/products.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqf/density.hpp"

namespace sqf {

namespace {

// Compensated accumulator; the traces sum up to ~10^6 log terms and the
// bound checks compare against 1e-12 tolerances.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_valid_selector(const PrimeSelector& selector, const char* op) {
  if (selector.is_class() && !selector.cls().is_coprime())
    throw std::invalid_argument(
        std::string(op) + ": residue class requires gcd(r, m) = 1");
}

double log_factor(std::uint64_t p) {
  // log(p/(1+p)) = -log1p(1/p)
  return -std::log1p(1.0 / static_cast<double>(p));
}

// First `terms` primes of the selector, in order. Explicit selectors must
// hold at least that many; class selectors are enumerated with a growing
// sieve bound.
std::vector<std::uint64_t> first_selected_primes(const PrimeSelector& selector,
                                                 std::uint64_t terms) {
  std::vector<std::uint64_t> out;
  if (terms == 0) return out;
  out.reserve(terms);
  if (!selector.is_class()) {
    const auto& primes = selector.primes();
    if (primes.size() < terms)
      throw std::invalid_argument(
          "selector holds only " + std::to_string(primes.size()) +
          " primes, " + std::to_string(terms) + " requested");
    out.assign(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(terms));
    return out;
  }
  std::uint64_t limit = 1u << 12;
  constexpr std::uint64_t kEnumerationCap = 1'000'000'000;
  while (true) {
    out.clear();
    selector.for_each(limit, [&](std::uint64_t p) {
      out.push_back(p);
      return out.size() < terms;
    });
    if (out.size() >= terms) return out;
    if (limit >= kEnumerationCap)
      throw std::runtime_error("class prime enumeration exceeded cap " +
                               std::to_string(kEnumerationCap));
    limit *= 2;
  }
}

}  // namespace

double ProductTrace::final_value() const { return std::exp(final_log()); }

std::optional<BigRational> ProductTrace::final_exact() const {
  if (empty()) return BigRational(1);
  if (exact_entries == entries.size()) return entries.back().partial;
  return std::nullopt;
}

ProductTrace partial_product(const PrimeSelector& selector, std::uint64_t limit,
                             std::size_t exact_limit) {
  require_valid_selector(selector, "partial_product");
  ProductTrace trace;
  trace.selector = selector;
  trace.limit = limit;

  BigRational exact(1);
  KahanSum log_acc;
  selector.for_each(limit, [&](std::uint64_t p) {
    ProductEntry e;
    e.prime = p;
    log_acc.add(log_factor(p));
    e.log_partial = log_acc.sum;
    if (trace.entries.size() < exact_limit) {
      exact.mul_prime_ratio(p);
      e.partial = exact;
      ++trace.exact_entries;
    }
    trace.entries.push_back(std::move(e));
    return true;
  });
  return trace;
}

double log_partial_product(const PrimeSelector& selector, std::uint64_t limit) {
  require_valid_selector(selector, "log_partial_product");
  KahanSum log_acc;
  selector.for_each(limit, [&](std::uint64_t p) {
    log_acc.add(log_factor(p));
    return true;
  });
  return log_acc.sum;
}

std::pair<BigRational, BigRational> telescoping_check(
    const PrimeSelector& selector, std::uint64_t terms) {
  require_valid_selector(selector, "telescoping_check");
  const std::vector<std::uint64_t> primes = first_selected_primes(selector, terms);

  BigRational sum_side(0);
  BigRational prefix(1);  // prod_{i<k} p_i/(1+p_i)
  for (std::uint64_t p : primes) {
    sum_side += prefix * BigRational(1, BigInt(p) + 1);
    prefix.mul_prime_ratio(p);
  }
  BigRational product_side = BigRational(1) - prefix;
  return {sum_side, product_side};
}

LogBoundPair log_product_bound(const PrimeSelector& selector, std::uint64_t limit) {
  require_valid_selector(selector, "log_product_bound");
  KahanSum neg_log;
  KahanSum reciprocal;
  selector.for_each(limit, [&](std::uint64_t p) {
    neg_log.add(std::log1p(1.0 / static_cast<double>(p)));
    reciprocal.add(1.0 / static_cast<double>(p));
    return true;
  });
  return {neg_log.sum, 0.5 * reciprocal.sum};
}

TruncationPoint truncation_for_epsilon(const ResidueClass& cls, double epsilon,
                                       std::uint64_t hard_cap) {
  if (!cls.is_coprime())
    throw std::invalid_argument("truncation_for_epsilon: gcd(r, m) must be 1");
  if (!(epsilon > 0.0) || epsilon >= kSquarefreeDensity)
    throw std::invalid_argument(
        "truncation_for_epsilon: epsilon must lie in (0, 6/pi^2)");

  const double log_target = std::log(epsilon / kSquarefreeDensity);
  KahanSum log_acc;
  TruncationPoint result;
  bool found = false;
  PrimeSelector selector{cls};
  selector.for_each(hard_cap, [&](std::uint64_t p) {
    log_acc.add(log_factor(p));
    if (log_acc.sum <= log_target) {
      result.cutoff = p;
      result.bound = kSquarefreeDensity * std::exp(log_acc.sum);
      found = true;
      return false;
    }
    return true;
  });
  if (!found)
    throw std::runtime_error(
        "truncation_for_epsilon: cutoff exceeds hard cap " +
        std::to_string(hard_cap) + " (partial bound still " +
        std::to_string(kSquarefreeDensity * std::exp(log_acc.sum)) + ")");
  return result;
}

ApReciprocalSum ap_reciprocal_sum(const ResidueClass& cls, std::uint64_t limit) {
  if (limit < 3)
    throw std::invalid_argument("ap_reciprocal_sum: limit must be >= 3");
  if (!cls.is_coprime())
    throw std::invalid_argument("ap_reciprocal_sum: gcd(r, m) must be 1");

  KahanSum sum;
  PrimeSelector selector{cls};
  selector.for_each(limit, [&](std::uint64_t p) {
    sum.add(1.0 / static_cast<double>(p));
    return true;
  });
  ApReciprocalSum out;
  out.sum = sum.sum;
  out.reference = std::log(std::log(static_cast<double>(limit))) /
                  static_cast<double>(euler_phi(cls.modulus));
  out.deviation = out.sum - out.reference;
  return out;
}

}  // namespace sqf
