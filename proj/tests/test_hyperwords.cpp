#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fbstairs/contfrac.hpp"
#include "fbstairs/farey.hpp"
#include "fbstairs/hyperwords.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using fbstairs::BigInt;
using fbstairs::FareyInterval;
using fbstairs::Fraction;
namespace cf = fbstairs::cf;
namespace words = fbstairs::words;
using words::HyperbolicWord;
using words::Matrix2;

namespace {

std::vector<BigInt> to_bigs(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Independent construction: descend the mediant tree one letter at a time.
FareyInterval interval_by_tree_walk(const std::string& letters) {
  Fraction left, right{BigInt(1), BigInt(1)};
  for (std::size_t i = 1; i < letters.size(); ++i) {
    const Fraction m = fbstairs::mediant(left, right);
    if (letters[i] == 'A') right = m;
    else left = m;
  }
  return FareyInterval{left, right, static_cast<int>(letters.size()) - 1};
}

Matrix2 swap_conjugate(const Matrix2& m) { return {m.d, m.c, m.b, m.a}; }

}  // namespace

TEST_CASE("word construction, encoding, and validation") {
  const auto w = HyperbolicWord::from_letters("AAPA");
  CHECK(w.first_letter() == 'A');
  CHECK(w.exponents() == to_bigs({2, 1, 1}));
  CHECK(w.digits() == to_bigs({2, 1, 1}));
  CHECK(w.letters() == "AAPA");
  CHECK(w.letter_count() == 4);
  CHECK(w.block_count() == 3);
  CHECK(w == HyperbolicWord::from_digits(to_bigs({2, 1, 1})));

  const auto p = HyperbolicWord::from_letters("PPA");
  CHECK(p.first_letter() == 'P');
  CHECK(p.exponents() == to_bigs({2, 1}));
  CHECK_THROWS_AS(p.digits(), std::domain_error);

  CHECK_THROWS_AS(HyperbolicWord::from_letters(""), std::invalid_argument);
  CHECK_THROWS_AS(HyperbolicWord::from_letters("AXP"), std::invalid_argument);
  CHECK_THROWS_AS(HyperbolicWord::from_digits({}), std::invalid_argument);
  CHECK_THROWS_AS(HyperbolicWord::from_digits(to_bigs({1, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(HyperbolicWord::from_digits(to_bigs({200000})).letters(),
                  std::length_error);
}

TEST_CASE("generator matrices and frozen products") {
  CHECK(words::word_matrix(HyperbolicWord::from_letters("A")) ==
        Matrix2{1, 0, 1, 1});
  CHECK(words::word_matrix(HyperbolicWord::from_letters("P")) ==
        Matrix2{1, 1, 0, 1});
  CHECK(words::word_matrix(HyperbolicWord::from_letters("AP")) ==
        Matrix2{1, 1, 1, 2});
  CHECK(words::word_matrix(HyperbolicWord::from_letters("PA")) ==
        Matrix2{2, 1, 1, 1});
  CHECK(words::word_matrix(HyperbolicWord::from_letters("AAPA")) ==
        Matrix2{2, 1, 5, 3});

  const BigInt e = boost::multiprecision::pow(BigInt(10), 30);
  const auto tall = words::word_matrix(HyperbolicWord::from_digits({e}));
  CHECK(tall == Matrix2{1, 0, e, 1});
  CHECK(tall.det() == 1);
}

TEST_CASE("matrix columns are the last two convergents of the digit list") {
  std::mt19937_64 rng(20260818);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<long> digit(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BigInt> d;
    const int m = len(rng);
    for (int i = 0; i < m; ++i) d.emplace_back(digit(rng));
    const cf::PartialQuotients pq(d);
    const auto convs = cf::convergents(pq, m);
    const Fraction c_m = convs.back().value();
    const Fraction c_m1 =
        m >= 2 ? convs[static_cast<std::size_t>(m) - 2].value() : Fraction();

    const Matrix2 mat = words::word_matrix(HyperbolicWord::from_digits(d));
    CHECK(mat.det() == 1);
    const Fraction col1{mat.a, mat.c};
    const Fraction col2{mat.b, mat.d};
    if (m % 2 == 1) {
      CHECK(col1 == c_m);
      CHECK(col2 == c_m1);
    } else {
      CHECK(col1 == c_m1);
      CHECK(col2 == c_m);
    }
  }
}

TEST_CASE("word intervals: frozen values and the mediant tree walk") {
  auto iv = [](const std::string& s) {
    return words::word_interval(HyperbolicWord::from_letters(s));
  };
  CHECK(iv("A").left == Fraction());
  CHECK(iv("A").right == Fraction(BigInt(1)));
  CHECK(iv("A").depth == 0);
  CHECK(iv("AA").right == Fraction(BigInt(1), BigInt(2)));
  CHECK(iv("AP").left == Fraction(BigInt(1), BigInt(2)));
  CHECK(iv("AAP").left == Fraction(BigInt(1), BigInt(3)));
  CHECK(iv("AAP").right == Fraction(BigInt(1), BigInt(2)));
  CHECK(iv("APA").left == Fraction(BigInt(1), BigInt(2)));
  CHECK(iv("APA").right == Fraction(BigInt(2), BigInt(3)));
  CHECK(iv("APP").right == Fraction(BigInt(1)));
  CHECK(iv("AAPA").left == Fraction(BigInt(1), BigInt(3)));
  CHECK(iv("AAPA").right == Fraction(BigInt(2), BigInt(5)));
  CHECK(iv("AAPA").depth == 3);

  CHECK_THROWS_AS(words::word_interval(HyperbolicWord::from_letters("P")),
                  std::domain_error);

  for (int L = 1; L <= 10; ++L) {
    for (int bits = 0; bits < (1 << (L - 1)); ++bits) {
      std::string s = "A";
      for (int j = 0; j < L - 1; ++j)
        s += (bits >> j) & 1 ? 'P' : 'A';
      const auto got = words::word_interval(HyperbolicWord::from_letters(s));
      const auto want = interval_by_tree_walk(s);
      CHECK(got.left == want.left);
      CHECK(got.right == want.right);
      CHECK(got.depth == want.depth);
    }
  }
}

TEST_CASE("length-L words tile the unit interval exactly") {
  const int L = 6;
  std::vector<FareyInterval> tiles;
  for (int bits = 0; bits < (1 << (L - 1)); ++bits) {
    std::string s = "A";
    for (int j = 0; j < L - 1; ++j) s += (bits >> j) & 1 ? 'P' : 'A';
    tiles.push_back(words::word_interval(HyperbolicWord::from_letters(s)));
  }
  std::sort(tiles.begin(), tiles.end(),
            [](const FareyInterval& x, const FareyInterval& y) {
              return x.left < y.left;
            });
  const auto segments = fbstairs::partition_segments(L - 1);
  REQUIRE(tiles.size() == segments.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    CHECK(tiles[i].left == segments[i].left);
    CHECK(tiles[i].right == segments[i].right);
  }
}

TEST_CASE("prefixing words: digit concatenation, matrix law, nesting") {
  const auto b = HyperbolicWord::from_digits(to_bigs({2}));
  const auto a = HyperbolicWord::from_digits(to_bigs({1, 1}));
  const auto ba = words::apply_transform(b, a);
  CHECK(ba.digits() == to_bigs({2, 1, 1}));

  std::mt19937_64 rng(20260818);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<long> digit(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BigInt> db, da;
    const int mb = len(rng), ma = len(rng);
    for (int i = 0; i < mb; ++i) db.emplace_back(digit(rng));
    for (int i = 0; i < ma; ++i) da.emplace_back(digit(rng));
    const auto wb = HyperbolicWord::from_digits(db);
    const auto wa = HyperbolicWord::from_digits(da);
    const auto joined = words::apply_transform(wb, wa);

    // matrix law: appending digits multiplies by the letter-swapped factor
    // when the prefix ends in an A block
    const Matrix2 lhs = words::word_matrix(joined);
    const Matrix2 ma_mat = words::word_matrix(wa);
    const Matrix2 rhs =
        words::word_matrix(wb) *
        (wb.block_count() % 2 == 1 ? swap_conjugate(ma_mat) : ma_mat);
    CHECK(lhs == rhs);

    // the refined interval nests inside the prefix interval
    const auto outer = words::word_interval(wb);
    const auto inner = words::word_interval(joined);
    CHECK(inner.left >= outer.left);
    CHECK(inner.right <= outer.right);
  }
}

TEST_CASE("contraction data: frozen example and exact identities") {
  const auto sf = words::scale_factor(HyperbolicWord::from_digits(to_bigs({2, 1})),
                                      HyperbolicWord::from_digits(to_bigs({1, 1})));
  CHECK(sf.lambda == Fraction(BigInt(1), BigInt(4)));
  CHECK(sf.theta == Fraction(BigInt(1), BigInt(3)));
  CHECK_FALSE(sf.sharper_bound_violated);

  // theta = 1/2 > (3 - sqrt 5)/2 makes the sharper bound fail
  const auto tight = words::scale_factor(HyperbolicWord::from_digits(to_bigs({1})),
                                         HyperbolicWord::from_digits(to_bigs({1, 1})));
  CHECK(tight.theta == Fraction(BigInt(1), BigInt(2)));
  CHECK(tight.sharper_bound_violated);

  const Fraction one{BigInt(1)};
  const Fraction half{BigInt(1), BigInt(2)};
  std::mt19937_64 rng(20260818);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<long> digit(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BigInt> db, da;
    const int mb = len(rng), ma = len(rng);
    for (int i = 0; i < mb; ++i) db.emplace_back(digit(rng));
    for (int i = 0; i < ma; ++i) da.emplace_back(digit(rng));
    const auto sfr = words::scale_factor(db, da);
    const Fraction kb{cf::continuant(db), BigInt(1)};

    // exact identity lambda K(b) (1 + theta) == 1
    CHECK(sfr.lambda * kb * (one + sfr.theta) == one);
    // coarse bounds via theta in (0, 1]; the single digit-1 pair is the
    // only case where theta reaches 1 and lambda K(b) touches 1/2
    CHECK(sfr.theta > Fraction());
    CHECK(sfr.lambda * kb < one);
    if (db == to_bigs({1}) && da == to_bigs({1})) {
      CHECK(sfr.theta == one);
      CHECK(sfr.lambda * kb == half);
    } else {
      CHECK(sfr.theta < one);
      CHECK(sfr.lambda * kb > half);
    }

    // interval lengths contract by lambda(b, a) * lambda(b, a minus last)
    if (ma >= 2) {
      std::vector<BigInt> da_short(da.begin(), da.end() - 1);
      const auto sfr_short = words::scale_factor(db, da_short);
      const auto wa = HyperbolicWord::from_digits(da);
      const auto wb = HyperbolicWord::from_digits(db);
      const auto joined = words::apply_transform(wb, wa);
      const Fraction len_a = fbstairs::euclid_length(words::word_interval(wa));
      const Fraction len_ba = fbstairs::euclid_length(words::word_interval(joined));
      CHECK(len_ba == sfr.lambda * sfr_short.lambda * len_a);
    }
  }

  CHECK_THROWS_AS(words::scale_factor(std::span<const BigInt>{},
                                      std::span<const BigInt>{}),
                  std::invalid_argument);
}
