#pragma once

#include "fbstairs/fraction.hpp"

#include <stdexcept>
#include <vector>

namespace fbstairs {

/// Thrown by covering_segment when the supplied bracket straddles a mediant,
/// so neither child segment can be certified to contain the point.
struct BracketStraddles : std::runtime_error {
  BracketStraddles(const Fraction& lo, const Fraction& hi, int level)
      : std::runtime_error("bracket [" + lo.str() + ", " + hi.str() +
                           "] straddles the mediant at level " + std::to_string(level) +
                           "; refine the bracket") {}
};

/// True when right.num*left.den - left.num*right.den == 1, i.e. the two
/// fractions are adjacent in some Farey-Brocot level.
bool unimodular(const Fraction& left, const Fraction& right);

/// Mediant (a.num+b.num)/(a.den+b.den). Rejects pairs that are not adjacent:
/// the mediant construction is only meaningful on unimodular pairs.
Fraction mediant(const Fraction& left, const Fraction& right);

/// One segment between two adjacent entries of a Farey-Brocot level.
///
/// `depth` is the partition depth d >= 0: the segment is one of the 2^d
/// segments cut by the level with 2^d + 1 entries, and carries hyperbolic
/// measure 2^-d. (The level index of its bounding entries is d + 1.)
struct FareyInterval {
  Fraction left;
  Fraction right;
  int depth = 0;
};

/// Euclidean length of a segment: exactly 1/(left.den * right.den).
Fraction euclid_length(const FareyInterval& seg);

/// Hyperbolic measure of a segment: exactly 2^-depth.
Fraction fb_measure(const FareyInterval& seg);

/// Mediant interpolation levels over [0,1].
/// depth k >= 1; entries(k) has 2^(k-1) + 1 fractions, ascending.
struct FareyLevel {
  int depth = 1;
  std::vector<Fraction> entries;
};

/// Materialized level k. Levels above k = 20 are refused: the lists double
/// per level, and every deeper query is answerable by tree descent instead.
FareyLevel farey_level(int k);
inline constexpr int kMaxMaterializedLevel = 20;

/// The 2^d segments of partition depth d (the gaps of level d + 1), ascending.
std::vector<FareyInterval> partition_segments(int d);

/// The segment of farey_level(level) containing a point x.
///
/// Point form: x rational, segments half-open [left, right), so an x equal
/// to a level entry belongs to the segment on its right. Requires 0 <= x < 1.
///
/// Bracket form: x known only through an exact open bracket lo < x < hi
/// (e.g. consecutive convergents of an irrational). Requires lo < hi and
/// hi <= 1. Throws BracketStraddles when the bracket contains a mediant in
/// its interior and therefore does not resolve to one child.
FareyInterval covering_segment(const Fraction& x, int level);
FareyInterval covering_segment(const Fraction& lo, const Fraction& hi, int level);

/// All mediant-tree descendants strictly inside seg, down extra_depth more
/// levels: 2^extra_depth - 1 fractions, ascending.
std::vector<Fraction> subtree_fractions(const FareyInterval& seg, int extra_depth);

}  // namespace fbstairs
