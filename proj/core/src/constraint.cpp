#include "sqf/constraint.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sqf {

std::vector<std::uint64_t> checked_prime_set(std::vector<std::uint64_t> primes,
                                             const char* what) {
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i]))
      throw std::invalid_argument(std::string(what) + ": " +
                                  std::to_string(primes[i]) + " is not prime");
    if (i > 0 && primes[i] == primes[i - 1])
      throw std::invalid_argument(std::string(what) + ": duplicate prime " +
                                  std::to_string(primes[i]));
  }
  return primes;
}

PrimeSelector::PrimeSelector() : set_(std::vector<std::uint64_t>{}) {}

PrimeSelector::PrimeSelector(std::initializer_list<std::uint64_t> primes)
    : PrimeSelector(std::vector<std::uint64_t>(primes)) {}

PrimeSelector::PrimeSelector(std::vector<std::uint64_t> primes)
    : set_(checked_prime_set(std::move(primes), "PrimeSelector")) {}

PrimeSelector::PrimeSelector(ResidueClass cls) : set_(cls) {}

bool PrimeSelector::is_empty() const {
  // A residue class selects infinitely many primes when coprime, and at
  // most one otherwise; treat it as nonempty either way.
  return !is_class() && primes().empty();
}

const std::vector<std::uint64_t>& PrimeSelector::primes() const {
  if (is_class())
    throw std::logic_error("PrimeSelector::primes: selector is a residue class");
  return std::get<std::vector<std::uint64_t>>(set_);
}

const ResidueClass& PrimeSelector::cls() const {
  if (!is_class())
    throw std::logic_error("PrimeSelector::cls: selector is an explicit set");
  return std::get<ResidueClass>(set_);
}

bool PrimeSelector::contains(std::uint64_t p) const {
  if (is_class()) return cls().contains(p);
  const auto& v = primes();
  return std::binary_search(v.begin(), v.end(), p);
}

void PrimeSelector::for_each(
    std::uint64_t limit, const std::function<bool(std::uint64_t)>& visit) const {
  if (is_class()) {
    const ResidueClass& c = cls();
    for_each_prime(limit, [&](std::uint64_t p) {
      if (!c.contains(p)) return true;
      return visit(p);
    });
  } else {
    for (std::uint64_t p : primes()) {
      if (p > limit) break;
      if (!visit(p)) break;
    }
  }
}

PrimeConstraint::PrimeConstraint(std::vector<std::uint64_t> mandatory,
                                 PrimeSelector forbidden)
    : mandatory_(checked_prime_set(std::move(mandatory), "PrimeConstraint")),
      forbidden_(std::move(forbidden)) {
  for (std::uint64_t t : mandatory_) {
    if (forbidden_.contains(t))
      throw std::invalid_argument(
          "PrimeConstraint: mandatory prime " + std::to_string(t) +
          " is also forbidden");
  }
}

}  // namespace sqf
