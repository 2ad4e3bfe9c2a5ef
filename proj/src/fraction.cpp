#include "fbstairs/fraction.hpp"

#include <cmath>

namespace fbstairs {

double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_big: argument must be positive");
  const unsigned bits = msb(x);  // index of highest set bit
  if (bits < 900) return std::log(x.convert_to<double>());
  // ln(x) = ln(top 64 bits) + (dropped bits) * ln 2
  const unsigned drop = bits - 63;
  const BigInt top = x >> drop;
  return std::log(top.convert_to<double>()) + static_cast<double>(drop) * M_LN2;
}

namespace {

// Floor k-th root by integer Newton iteration, seeded above the true root so
// the sequence decreases monotonically onto floor(x^(1/k)).
BigInt iroot_floor(const BigInt& x, unsigned k) {
  if (x <= 1) return x;
  if (k == 1) return x;
  if (k == 2) return boost::multiprecision::sqrt(x);
  const unsigned bits = msb(x) + 1;  // x < 2^bits, so root < 2^ceil(bits/k)
  BigInt r = BigInt(1) << ((bits + k - 1) / k);
  while (true) {
    BigInt t = ((k - 1) * r + x / boost::multiprecision::pow(r, k - 1)) / k;
    if (t >= r) return r;
    r = t;
  }
}

}  // namespace

BigInt iroot_ceil(const BigInt& x, unsigned k) {
  if (k == 0) throw std::domain_error("iroot_ceil: k must be >= 1");
  if (x <= 0) return 0;
  if (k == 1 || x == 1) return x;
  BigInt r = iroot_floor(x, k);
  if (boost::multiprecision::pow(r, k) < x) ++r;
  return r;
}

double Fraction::to_double() const {
  if (num_ == 0) return 0.0;
  const unsigned nb = msb(num_), db = msb(den_);
  if (nb < 900 && db < 900)
    return num_.convert_to<double>() / den_.convert_to<double>();
  return std::exp(log_big(num_) - log_big(den_));
}

Fraction Fraction::pow(const Fraction& a, unsigned k) {
  if (k == 0) return Fraction(BigInt(1));
  return Fraction(boost::multiprecision::pow(a.num_, k),
                  boost::multiprecision::pow(a.den_, k));
}

}  // namespace fbstairs
