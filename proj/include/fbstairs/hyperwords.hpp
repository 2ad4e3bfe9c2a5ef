#pragma once

#include "fbstairs/farey.hpp"
#include "fbstairs/fraction.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fbstairs::words {

/// 2x2 integer matrix [[a, b], [c, d]].
struct Matrix2 {
  BigInt a, b, c, d;

  static Matrix2 identity() { return {1, 0, 0, 1}; }
  BigInt det() const { return a * d - b * c; }
  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend bool operator==(const Matrix2& l, const Matrix2& r) = default;
};

/// Word in the two generators A = [[1,0],[1,1]] and P = [[1,1],[0,1]],
/// stored as alternating exponent blocks (first_letter, e_1), (other, e_2), ...
/// with every exponent >= 1. A word whose first letter is A and whose block
/// exponents are (a_1, ..., a_m) carries the same data as the digit list
/// [a_1, ..., a_m].
class HyperbolicWord {
 public:
  static HyperbolicWord from_letters(const std::string& letters);
  /// Leading-A word with the given exponents.
  static HyperbolicWord from_digits(std::vector<BigInt> digits);

  char first_letter() const { return first_; }
  const std::vector<BigInt>& exponents() const { return exponents_; }
  std::size_t block_count() const { return exponents_.size(); }
  BigInt letter_count() const;

  /// Exponent blocks read as a digit list; requires a leading-A word.
  const std::vector<BigInt>& digits() const;

  /// Expanded letter string; throws std::length_error beyond 100000 letters.
  std::string letters() const;

  friend bool operator==(const HyperbolicWord& l, const HyperbolicWord& r) = default;

 private:
  HyperbolicWord(char first, std::vector<BigInt> exponents);
  char first_;
  std::vector<BigInt> exponents_;
};

/// Product of the letter matrices, using the closed forms
/// A^e = [[1,0],[e,1]] and P^e = [[1,e],[0,1]] per block. Its determinant is
/// always 1, and for a leading-A word with m blocks the columns read as
/// fractions (top/bottom) are the convergents {c_m, c_{m-1}} of the word's
/// digit list, in that order when m is odd and reversed when m is even.
Matrix2 word_matrix(const HyperbolicWord& w);

/// The Farey segment a leading-A word addresses: the interval between the two
/// column fractions of its matrix, at partition depth (letter count) - 1.
/// Equivalently: start from [0/1, 1/1]; every letter after the first descends
/// to the left (A) or right (P) mediant child.
FareyInterval word_interval(const HyperbolicWord& w);

/// Word whose digit list is the concatenation of the two digit lists;
/// its interval is nested inside word_interval(b)'s refinement structure.
HyperbolicWord apply_transform(const HyperbolicWord& b, const HyperbolicWord& a);

/// Contraction data of prefixing digits b onto digits a:
///   lambda = K(a) / K(b || a),
///   theta  = K(b minus last) K(a minus first) / (K(b) K(a)),
/// satisfying lambda * K(b) * (1 + theta) == 1 exactly, with
/// 1/2 < lambda * K(b) < 1 strictly except for the single degenerate pair
/// b = a = [1], where theta = 1 and lambda * K(b) = 1/2 exactly.
/// sharper_bound_violated records, by the
/// equivalent exact test theta^2 + 1 <= 3 theta, whether lambda * K(b) drops
/// to or below (5 + sqrt 5)/10 ~ 0.7236.
struct ScaleFactor {
  Fraction lambda;
  Fraction theta;
  bool sharper_bound_violated = false;
};

ScaleFactor scale_factor(std::span<const BigInt> b, std::span<const BigInt> a);
ScaleFactor scale_factor(const HyperbolicWord& b, const HyperbolicWord& a);

}  // namespace fbstairs::words
