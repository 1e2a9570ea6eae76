#include "sqf/counting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

#include "sqf/density.hpp"
#include "sqf/products.hpp"

namespace sqf {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// One fully reduced sieve job: count k in [1, n] that are square-free,
// divisible by no prime in `forbidden` and by no prime of the residue class.
struct SieveTask {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> base;       // all primes <= sqrt(n)
  std::vector<std::uint64_t> forbidden;  // sorted explicit forbidden primes
  bool has_class = false;
  std::uint64_t cls_m = 1;
  std::uint64_t cls_r = 0;
};

std::uint64_t sieve_range(const SieveTask& task, std::uint64_t lo, std::uint64_t hi) {
  std::vector<char> alive(kSegmentFlags);
  // In class mode, mult[i] accumulates the product of the small primes
  // dividing k = lo+i, once each; for surviving square-free k the cofactor
  // k / mult[i] is 1 or a single prime > sqrt(n), which is all that is
  // needed to decide membership in the residue class.
  std::vector<std::uint64_t> mult;
  if (task.has_class) mult.resize(kSegmentFlags);

  std::uint64_t total = 0;
  std::uint64_t seg_lo = lo;
  while (seg_lo <= hi) {
    const std::uint64_t seg_hi = std::min(seg_lo + kSegmentFlags - 1, hi);
    const std::size_t len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    std::fill(alive.begin(), alive.begin() + len, char{1});
    if (task.has_class) std::fill(mult.begin(), mult.begin() + len, std::uint64_t{1});

    for (std::uint64_t q : task.base) {
      const std::uint64_t q2 = q * q;
      if (q2 <= seg_hi) {
        std::uint64_t j = ((seg_lo + q2 - 1) / q2) * q2;
        for (; j <= seg_hi; j += q2) alive[j - seg_lo] = 0;
      } else if (!task.has_class) {
        break;  // base is sorted; no further square can reach this segment
      }
      if (task.has_class) {
        std::uint64_t j = ((seg_lo + q - 1) / q) * q;
        if (q % task.cls_m == task.cls_r) {
          for (; j <= seg_hi; j += q) alive[j - seg_lo] = 0;
        } else {
          for (; j <= seg_hi; j += q) mult[j - seg_lo] *= q;
        }
      }
    }

    for (std::uint64_t t : task.forbidden) {
      if (t > seg_hi) break;
      std::uint64_t j = ((seg_lo + t - 1) / t) * t;
      for (; j <= seg_hi; j += t) alive[j - seg_lo] = 0;
    }

    if (task.has_class) {
      for (std::size_t i = 0; i < len; ++i) {
        if (!alive[i]) continue;
        const std::uint64_t cof = (seg_lo + i) / mult[i];
        if (cof > 1 && cof % task.cls_m == task.cls_r) alive[i] = 0;
      }
    }

    for (std::size_t i = 0; i < len; ++i) total += static_cast<unsigned char>(alive[i]);
    seg_lo = seg_hi + 1;
  }
  return total;
}

std::uint64_t run_sieve(const SieveTask& task, unsigned threads) {
  if (task.n == 0) return 0;
  if (threads <= 1 || task.n < 4 * kSegmentFlags)
    return sieve_range(task, 1, task.n);

  // Chunks are segment-aligned; the per-chunk counts add up to the same
  // total under any partition.
  const std::uint64_t segments = (task.n + kSegmentFlags - 1) / kSegmentFlags;
  const std::uint64_t per_chunk =
      ((segments + threads - 1) / threads) * kSegmentFlags;
  std::vector<std::future<std::uint64_t>> parts;
  for (std::uint64_t lo = 1; lo <= task.n; lo += per_chunk) {
    const std::uint64_t hi = std::min(task.n, lo + per_chunk - 1);
    parts.push_back(std::async(std::launch::async,
                               [&task, lo, hi] { return sieve_range(task, lo, hi); }));
  }
  std::uint64_t total = 0;
  for (auto& f : parts) total += f.get();
  return total;
}

// Product of the mandatory primes, saturating just past the cap so the
// caller can detect an empty reduced range without overflow.
std::uint64_t mandatory_product(std::span<const std::uint64_t> t, std::uint64_t cap) {
  std::uint64_t s = 1;
  for (std::uint64_t p : t) {
    if (s > cap / p) return cap + 1;
    s *= p;
  }
  return s;
}

SieveTask make_task(const CountQuery& q) {
  SieveTask task;
  const std::uint64_t s = mandatory_product(q.constraint.mandatory(), q.x);
  if (s > q.x) return task;  // n = 0: no multiple of s is <= x
  task.n = q.x / s;
  task.base = primes_up_to(isqrt(task.n)).primes;
  task.forbidden = q.constraint.mandatory();
  if (q.constraint.forbidden().is_class()) {
    task.has_class = true;
    task.cls_m = q.constraint.forbidden().cls().modulus;
    task.cls_r = q.constraint.forbidden().cls().residue;
  } else {
    const auto& p = q.constraint.forbidden().primes();
    task.forbidden.insert(task.forbidden.end(), p.begin(), p.end());
  }
  std::sort(task.forbidden.begin(), task.forbidden.end());
  return task;
}

}  // namespace

std::uint64_t count_sieve(const CountQuery& q, const CountOptions& opt) {
  if (q.x > opt.max_x)
    throw std::invalid_argument("count_sieve: x = " + std::to_string(q.x) +
                                " exceeds the cap " + std::to_string(opt.max_x));
  return run_sieve(make_task(q), opt.threads);
}

std::uint64_t count_naive(const CountQuery& q) {
  if (q.x > kNaiveCountCap)
    throw std::invalid_argument("count_naive: x exceeds the oracle cap");
  if (q.x == 0) return 0;

  // Smallest-prime-factor table via a linear sieve.
  const std::size_t n = static_cast<std::size_t>(q.x);
  std::vector<std::uint32_t> spf(n + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > n) break;
      spf[i * p] = p;
    }
  }

  const auto& mandatory = q.constraint.mandatory();
  const PrimeSelector& forbidden = q.constraint.forbidden();
  std::uint64_t count = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t m = k;
    std::size_t matched = 0;
    bool ok = true;
    while (m > 1) {
      const std::uint64_t p = spf[m];
      m /= p;
      if (m % p == 0) {  // p^2 | k
        ok = false;
        break;
      }
      if (forbidden.contains(p)) {
        ok = false;
        break;
      }
      if (std::binary_search(mandatory.begin(), mandatory.end(), p)) ++matched;
    }
    if (ok && matched == mandatory.size()) ++count;
  }
  return count;
}

std::uint64_t count_squarefree_mobius(std::uint64_t x) {
  if (x > kMobiusCountCap)
    throw std::invalid_argument("count_squarefree_mobius: x exceeds the cap");
  if (x == 0) return 0;
  const std::uint64_t s = isqrt(x);

  // mu over [1, s] via a linear sieve.
  std::vector<signed char> mu(s + 1, 0);
  std::vector<char> composite(s + 1, 0);
  std::vector<std::uint32_t> primes;
  mu[1] = 1;
  for (std::uint64_t i = 2; i <= s; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      if (i * p > s) break;
      composite[i * p] = 1;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<signed char>(-mu[i]);
    }
  }

  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= s; ++d)
    if (mu[d] != 0) total += static_cast<std::int64_t>(mu[d]) *
                             static_cast<std::int64_t>(x / (d * d));
  return static_cast<std::uint64_t>(total);
}

std::pair<std::uint64_t, std::uint64_t> bijection_identity(
    std::uint64_t x, std::span<const std::uint64_t> mandatory,
    std::span<const std::uint64_t> extra,
    std::span<const std::uint64_t> forbidden, const CountOptions& opt) {
  auto t = checked_prime_set({mandatory.begin(), mandatory.end()}, "bijection_identity: T");
  auto s_set = checked_prime_set({extra.begin(), extra.end()}, "bijection_identity: S");
  auto p_set = checked_prime_set({forbidden.begin(), forbidden.end()}, "bijection_identity: P");
  if (s_set.empty())
    throw std::invalid_argument("bijection_identity: S must be nonempty");
  auto disjoint = [](const auto& a, const auto& b, const char* what) {
    for (std::uint64_t v : a)
      if (std::binary_search(b.begin(), b.end(), v))
        throw std::invalid_argument(std::string("bijection_identity: sets not disjoint (") +
                                    what + ", prime " + std::to_string(v) + ")");
  };
  disjoint(t, s_set, "T,S");
  disjoint(t, p_set, "T,P");
  disjoint(s_set, p_set, "S,P");

  const std::uint64_t s = mandatory_product(s_set, opt.max_x);
  if (s > opt.max_x / (x == 0 ? 1 : x))
    throw std::invalid_argument("bijection_identity: x * prod(S) exceeds the sieve cap");

  std::vector<std::uint64_t> s_or_p = s_set;
  s_or_p.insert(s_or_p.end(), p_set.begin(), p_set.end());
  std::vector<std::uint64_t> t_or_s = t;
  t_or_s.insert(t_or_s.end(), s_set.begin(), s_set.end());

  const std::uint64_t lhs =
      count_sieve({x, PrimeConstraint(t, PrimeSelector(s_or_p))}, opt);
  const std::uint64_t rhs =
      count_sieve({x * s, PrimeConstraint(t_or_s, PrimeSelector(p_set))}, opt);
  return {lhs, rhs};
}

std::pair<std::uint64_t, std::vector<std::uint64_t>> partition_identity(
    std::uint64_t x, std::span<const std::uint64_t> t, const CountOptions& opt) {
  auto primes = checked_prime_set({t.begin(), t.end()}, "partition_identity");
  if (primes.size() > 10)
    throw std::invalid_argument("partition_identity: |T| must be <= 10");

  const std::uint64_t total = count_sieve({x, PrimeConstraint()}, opt);
  std::vector<std::uint64_t> parts;
  parts.reserve(std::size_t{1} << primes.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
    std::vector<std::uint64_t> keep;    // T \ S stays mandatory
    std::vector<std::uint64_t> chosen;  // S becomes forbidden
    for (std::size_t i = 0; i < primes.size(); ++i)
      (mask & (std::size_t{1} << i) ? chosen : keep).push_back(primes[i]);
    parts.push_back(
        count_sieve({x, PrimeConstraint(keep, PrimeSelector(chosen))}, opt));
  }
  return {total, parts};
}

CountReport empirical_density(const CountQuery& q, const CountOptions& opt) {
  CountReport report;
  report.query = q;
  report.count = count_sieve(q, opt);
  report.ratio = q.x == 0 ? 0.0
                          : static_cast<double>(report.count) /
                                static_cast<double>(q.x);
  if (q.constraint.forbidden().is_class()) {
    BigRational t_factor(1);
    for (std::uint64_t p : q.constraint.mandatory())
      t_factor *= BigRational(1, BigInt(p) + 1);
    report.predicted =
        kSquarefreeDensity * t_factor.to_double() *
        std::exp(log_partial_product(q.constraint.forbidden(), q.x));
    report.predicted_is_bound = true;
  } else {
    report.predicted = density(q.constraint).value;
    report.predicted_is_bound = false;
  }
  report.deviation = report.ratio - report.predicted;
  return report;
}

}  // namespace sqf
