#include "sqf/big_rational.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace sqf {

namespace mp = boost::multiprecision;

double log_bigint(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log_bigint: argument must be positive");
  const std::size_t bits = mp::msb(n) + 1;
  if (bits <= 970) return std::log(n.convert_to<double>());
  const BigInt top = n >> (bits - 64);
  return std::log(top.convert_to<double>()) +
         static_cast<double>(bits - 64) * std::numbers::ln2;
}

BigRational::BigRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::invalid_argument("BigRational: zero denominator");
  normalize();
}

void BigRational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

BigRational& BigRational::operator+=(const BigRational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.num_ == 0) throw std::invalid_argument("BigRational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

BigRational BigRational::operator-() const {
  BigRational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

bool operator<(const BigRational& a, const BigRational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

void BigRational::mul_prime_ratio(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("mul_prime_ratio: p must be >= 2");
  BigInt a = p;
  BigInt b = p + 1;
  // num_/den_ is in lowest terms and gcd(p, p+1) = 1, so one small gcd per
  // side fully reduces the product.
  if (den_ % a == 0) {
    den_ /= a;
    a = 1;
  }
  BigInt g = mp::gcd(num_, b);
  if (g > 1) {
    num_ /= g;
    b /= g;
  }
  num_ *= a;
  den_ *= b;
  if (num_ == 0) den_ = 1;
}

double BigRational::to_double() const {
  if (num_ == 0) return 0.0;
  const bool neg = num_ < 0;
  const BigInt n = neg ? BigInt(-num_) : num_;
  const std::size_t bn = mp::msb(n) + 1;
  const std::size_t bd = mp::msb(den_) + 1;
  if (bn <= 1000 && bd <= 1000) {
    const double v = n.convert_to<double>() / den_.convert_to<double>();
    return neg ? -v : v;
  }
  const std::size_t sn = bn > 64 ? bn - 64 : 0;
  const std::size_t sd = bd > 64 ? bd - 64 : 0;
  const double top = BigInt(n >> sn).convert_to<double>() /
                     BigInt(den_ >> sd).convert_to<double>();
  const double v = std::ldexp(top, static_cast<int>(static_cast<long long>(sn) -
                                                    static_cast<long long>(sd)));
  return neg ? -v : v;
}

double BigRational::log() const {
  if (num_ <= 0) throw std::domain_error("BigRational::log: value must be positive");
  if (num_ == den_) return 0.0;
  // Scale so the integer quotient carries ~80 significant bits; the shift
  // correction stays small enough that no precision is lost to cancellation.
  const long long bn = static_cast<long long>(mp::msb(num_));
  const long long bd = static_cast<long long>(mp::msb(den_));
  long long shift = bd - bn + 80;
  if (shift < 0) shift = 0;
  const BigInt q = (num_ << shift) / den_;
  return log_bigint(q) - static_cast<double>(shift) * std::numbers::ln2;
}

std::string BigRational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) {
  return os << r.str();
}

}  // namespace sqf
