#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace fbstairs {

using BigInt = boost::multiprecision::cpp_int;

/// Natural logarithm of a positive big integer. Works far beyond the range
/// where a straight double conversion would overflow.
double log_big(const BigInt& x);

/// Smallest integer r with r^k >= x  (x >= 0, k >= 1).
BigInt iroot_ceil(const BigInt& x, unsigned k);

/// Exact non-negative rational, always reduced, denominator >= 1.
///
/// Heights on the staircase axis live in [0,1]; differences are taken with
/// abs_diff so the type never needs a sign.
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}

  Fraction(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("Fraction: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ < 0) throw std::domain_error("Fraction: negative value");
    normalize();
  }

  explicit Fraction(const BigInt& n) : num_(n), den_(1) {
    if (num_ < 0) throw std::domain_error("Fraction: negative value");
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  /// Decimal value; stays finite even when num/den exceed double range.
  double to_double() const;

  std::string str() const { return num_.str() + "/" + den_.str(); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.num_, a.den_ * b.den_);
  }

  /// |a - b| as an exact rational.
  static Fraction abs_diff(const Fraction& a, const Fraction& b) {
    BigInt lhs = a.num_ * b.den_, rhs = b.num_ * a.den_;
    BigInt d = lhs >= rhs ? lhs - rhs : rhs - lhs;
    return Fraction(std::move(d), a.den_ * b.den_);
  }

  /// a^k with k >= 0 (0^0 = 1).
  static Fraction pow(const Fraction& a, unsigned k);

 private:
  void normalize() {
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace fbstairs
