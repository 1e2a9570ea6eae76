#include "sqf/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqf {

namespace {

// Base sieve, used for limits up to sqrt of the segmented range.
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> is_prime(limit + 1, 1);
  is_prime[0] = 0;
  is_prime[1] = 0;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (is_prime[i]) out.push_back(i);
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

ResidueClass::ResidueClass(std::uint64_t m, std::uint64_t r)
    : modulus(m), residue(r) {
  if (m < 1) throw std::invalid_argument("ResidueClass: modulus must be >= 1");
  if (r >= m) throw std::invalid_argument("ResidueClass: residue must be < modulus");
}

bool ResidueClass::is_coprime() const {
  return std::gcd(residue, modulus) == 1;
}

void for_each_prime(std::uint64_t limit,
                    const std::function<bool(std::uint64_t)>& visit) {
  if (limit < 2) return;
  const std::uint64_t sqrt_limit = isqrt(limit);
  const std::vector<std::uint64_t> base = simple_sieve(sqrt_limit);
  for (std::uint64_t p : base)
    if (!visit(p)) return;

  std::vector<char> flags(kSegmentFlags);
  std::uint64_t low = sqrt_limit + 1;
  while (low <= limit) {
    const std::uint64_t high = std::min(low + kSegmentFlags - 1, limit);
    std::fill(flags.begin(), flags.begin() + (high - low + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t first = ((low + p - 1) / p) * p;
      if (first < p * p) first = p * p;
      for (std::uint64_t j = first; j <= high; j += p) flags[j - low] = 0;
    }
    for (std::uint64_t n = low; n <= high; ++n)
      if (flags[n - low] && !visit(n)) return;
    low = high + 1;
  }
}

PrimeList primes_up_to(std::uint64_t limit) {
  PrimeList list;
  list.limit = limit;
  if (limit >= 2) {
    // pi(x) ~ x/ln x; reserve with a little slack to avoid reallocation.
    const double x = static_cast<double>(std::max<std::uint64_t>(limit, 16));
    list.primes.reserve(static_cast<std::size_t>(1.15 * x / std::log(x)) + 8);
  }
  for_each_prime(limit, [&](std::uint64_t p) {
    list.primes.push_back(p);
    return true;
  });
  return list;
}

PrimeList primes_in_class(const ResidueClass& c, std::uint64_t limit) {
  PrimeList list;
  list.limit = limit;
  for_each_prime(limit, [&](std::uint64_t p) {
    if (c.contains(p)) list.primes.push_back(p);
    return true;
  });
  return list;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("is_squarefree: n must be >= 1");
  if (n < 4) return true;
  std::uint64_t m = n;
  for (std::uint64_t d = 2; d * d * d <= m && d * d <= n; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return false;
    }
  }
  // m now has at most two prime factors; a square divides it only if
  // m itself is the square of a prime.
  const std::uint64_t r = isqrt(m);
  return !(r > 1 && r * r == m);
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
  if (n % 2 == 0) return 2;
  if (n % 3 == 0) return 3;
  if (is_prime(n)) return n;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0) return d;
    if (n % (d + 2) == 0) return d + 2;
  }
  return n;  // unreachable for composite n checked above
}

std::uint64_t euler_phi(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("euler_phi: m must be >= 1");
  std::uint64_t result = m;
  std::uint64_t rest = m;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      result -= result / d;
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) result -= result / rest;
  return result;
}

}  // namespace sqf
