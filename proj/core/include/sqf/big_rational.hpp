// Exact arbitrary-precision rational arithmetic. Values are kept in lowest
// terms with a positive denominator at all times; every density factor and
// partial product in the library is one of these.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sqf {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive big integer, accurate to a few ulp of the result.
double log_bigint(const BigInt& n);

class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  explicit BigRational(BigInt n) : num_(std::move(n)), den_(1) {}
  BigRational(BigInt numerator, BigInt denominator);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);
  BigRational operator-() const;

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
  friend bool operator<(const BigRational& a, const BigRational& b);
  friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

  // In-place multiply by p/(1+p). Equivalent to *= BigRational(p, p+1) but
  // reduces with word-size gcds only, so building a product of thousands of
  // such factors stays near-linear in the operand length.
  void mul_prime_ratio(std::uint64_t p);

  double to_double() const;
  // Natural log; requires a positive value.
  double log() const;

  // "num/den", or just "num" for integers.
  std::string str() const;

 private:
  void normalize();

  BigInt num_;
  BigInt den_;  // > 0, gcd(num_, den_) == 1
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

}  // namespace sqf
