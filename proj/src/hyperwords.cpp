#include "fbstairs/hyperwords.hpp"

#include "fbstairs/contfrac.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fbstairs::words {

HyperbolicWord::HyperbolicWord(char first, std::vector<BigInt> exponents)
    : first_(first), exponents_(std::move(exponents)) {}

HyperbolicWord HyperbolicWord::from_letters(const std::string& letters) {
  if (letters.empty())
    throw std::invalid_argument("HyperbolicWord: letter string must be non-empty");
  std::vector<BigInt> exponents;
  char current = 0;
  for (char ch : letters) {
    if (ch != 'A' && ch != 'P')
      throw std::invalid_argument("HyperbolicWord: letters must be 'A' or 'P'");
    if (ch == current) {
      exponents.back() += 1;
    } else {
      exponents.emplace_back(1);
      current = ch;
    }
  }
  return HyperbolicWord(letters.front(), std::move(exponents));
}

HyperbolicWord HyperbolicWord::from_digits(std::vector<BigInt> digits) {
  if (digits.empty())
    throw std::invalid_argument("HyperbolicWord: digit list must be non-empty");
  for (const BigInt& d : digits)
    if (d < 1)
      throw std::invalid_argument("HyperbolicWord: every exponent must be >= 1");
  return HyperbolicWord('A', std::move(digits));
}

BigInt HyperbolicWord::letter_count() const {
  BigInt total = 0;
  for (const BigInt& e : exponents_) total += e;
  return total;
}

const std::vector<BigInt>& HyperbolicWord::digits() const {
  if (first_ != 'A')
    throw std::domain_error("HyperbolicWord: only leading-A words read as digits");
  return exponents_;
}

std::string HyperbolicWord::letters() const {
  if (letter_count() > 100000)
    throw std::length_error("HyperbolicWord: letter expansion too large");
  std::string out;
  char ch = first_;
  for (const BigInt& e : exponents_) {
    out.append(e.convert_to<std::size_t>(), ch);
    ch = ch == 'A' ? 'P' : 'A';
  }
  return out;
}

Matrix2 word_matrix(const HyperbolicWord& w) {
  Matrix2 m = Matrix2::identity();
  char ch = w.first_letter();
  for (const BigInt& e : w.exponents()) {
    const Matrix2 block =
        ch == 'A' ? Matrix2{1, 0, e, 1} : Matrix2{1, e, 0, 1};
    m = m * block;
    ch = ch == 'A' ? 'P' : 'A';
  }
  return m;
}

FareyInterval word_interval(const HyperbolicWord& w) {
  if (w.first_letter() != 'A')
    throw std::domain_error("word_interval: word must start with 'A'");
  const Matrix2 m = word_matrix(w);
  const Fraction f1{m.a, m.c};
  const Fraction f2{m.b, m.d};
  const BigInt depth = w.letter_count() - 1;
  if (depth > std::numeric_limits<int>::max())
    throw std::overflow_error("word_interval: depth exceeds int range");
  return FareyInterval{std::min(f1, f2), std::max(f1, f2),
                       depth.convert_to<int>()};
}

HyperbolicWord apply_transform(const HyperbolicWord& b, const HyperbolicWord& a) {
  std::vector<BigInt> joined = b.digits();
  const std::vector<BigInt>& tail = a.digits();
  joined.insert(joined.end(), tail.begin(), tail.end());
  return HyperbolicWord::from_digits(std::move(joined));
}

ScaleFactor scale_factor(std::span<const BigInt> b, std::span<const BigInt> a) {
  if (b.empty() || a.empty())
    throw std::invalid_argument("scale_factor: both digit blocks must be non-empty");
  std::vector<BigInt> joined(b.begin(), b.end());
  joined.insert(joined.end(), a.begin(), a.end());

  const BigInt kb = cf::continuant(b);
  const BigInt ka = cf::continuant(a);
  const BigInt kba = cf::continuant(joined);
  const BigInt kb_short = cf::continuant(b.first(b.size() - 1));
  const BigInt ka_short = cf::continuant(a.subspan(1));

  ScaleFactor out;
  out.lambda = Fraction{ka, kba};
  out.theta = Fraction{kb_short * ka_short, kb * ka};
  // lambda K(b) <= (5 + sqrt 5)/10 in the exact form theta^2 + 1 <= 3 theta
  const Fraction theta_sq = Fraction::pow(out.theta, 2);
  out.sharper_bound_violated =
      theta_sq + Fraction(BigInt(1)) <= Fraction(BigInt(3)) * out.theta;
  return out;
}

ScaleFactor scale_factor(const HyperbolicWord& b, const HyperbolicWord& a) {
  return scale_factor(std::span<const BigInt>(b.digits()),
                      std::span<const BigInt>(a.digits()));
}

}  // namespace fbstairs::words
