// Divisibility constraints on square-free integers: a finite set of
// mandatory prime divisors plus a forbidden prime selector, which is either
// an explicit finite set or a full residue class of primes.
#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "sqf/primes.hpp"

namespace sqf {

// Selects a set of primes: either an explicit finite list or every prime in
// a residue class. Explicit lists are validated (primality, no duplicates)
// and stored sorted.
class PrimeSelector {
 public:
  PrimeSelector();  // empty explicit set
  PrimeSelector(std::initializer_list<std::uint64_t> primes);
  explicit PrimeSelector(std::vector<std::uint64_t> primes);
  explicit PrimeSelector(ResidueClass cls);

  bool is_class() const { return std::holds_alternative<ResidueClass>(set_); }
  bool is_empty() const;

  // Explicit selectors only.
  const std::vector<std::uint64_t>& primes() const;
  // Class selectors only.
  const ResidueClass& cls() const;

  bool contains(std::uint64_t p) const;

  // Visits the selected primes <= limit in increasing order; the visitor
  // returns false to stop early.
  void for_each(std::uint64_t limit,
                const std::function<bool(std::uint64_t)>& visit) const;

  bool operator==(const PrimeSelector& o) const { return set_ == o.set_; }

 private:
  std::variant<std::vector<std::uint64_t>, ResidueClass> set_;
};

inline bool operator==(const ResidueClass& a, const ResidueClass& b) {
  return a.modulus == b.modulus && a.residue == b.residue;
}

// The pair (T, P): square-free integers divisible by every prime in the
// mandatory set T and by no prime selected by the forbidden set P.
// Construction validates primality of T and disjointness of T and P.
class PrimeConstraint {
 public:
  PrimeConstraint() = default;  // unconstrained: all square-free integers
  PrimeConstraint(std::vector<std::uint64_t> mandatory, PrimeSelector forbidden);

  const std::vector<std::uint64_t>& mandatory() const { return mandatory_; }
  const PrimeSelector& forbidden() const { return forbidden_; }

  bool is_unconstrained() const {
    return mandatory_.empty() && forbidden_.is_empty();
  }

  bool operator==(const PrimeConstraint& o) const {
    return mandatory_ == o.mandatory_ && forbidden_ == o.forbidden_;
  }

 private:
  std::vector<std::uint64_t> mandatory_;  // sorted distinct primes
  PrimeSelector forbidden_;
};

// Validates a list of distinct primes; returns it sorted.
std::vector<std::uint64_t> checked_prime_set(std::vector<std::uint64_t> primes,
                                             const char* what);

}  // namespace sqf
