#include "fbstairs/farey.hpp"

namespace fbstairs {

bool unimodular(const Fraction& left, const Fraction& right) {
  return right.num() * left.den() - left.num() * right.den() == 1;
}

Fraction mediant(const Fraction& left, const Fraction& right) {
  if (!unimodular(left, right))
    throw std::invalid_argument("mediant: " + left.str() + ", " + right.str() +
                                " is not an adjacent (unimodular) pair");
  // num/den stay coprime for unimodular parents, so no reduction happens.
  return Fraction(left.num() + right.num(), left.den() + right.den());
}

Fraction euclid_length(const FareyInterval& seg) {
  return Fraction(BigInt(1), seg.left.den() * seg.right.den());
}

Fraction fb_measure(const FareyInterval& seg) {
  if (seg.depth < 0) throw std::domain_error("fb_measure: negative depth");
  return Fraction(BigInt(1), BigInt(1) << seg.depth);
}

FareyLevel farey_level(int k) {
  if (k < 1) throw std::invalid_argument("farey_level: depth must be >= 1");
  if (k > kMaxMaterializedLevel)
    throw std::invalid_argument("farey_level: depth " + std::to_string(k) +
                                " exceeds the materialization cap of " +
                                std::to_string(kMaxMaterializedLevel) +
                                "; use covering_segment for deep queries");
  FareyLevel lvl;
  lvl.depth = k;
  lvl.entries = {Fraction(BigInt(0), BigInt(1)), Fraction(BigInt(1), BigInt(1))};
  for (int d = 2; d <= k; ++d) {
    std::vector<Fraction> next;
    next.reserve(lvl.entries.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < lvl.entries.size(); ++i) {
      next.push_back(lvl.entries[i]);
      next.push_back(mediant(lvl.entries[i], lvl.entries[i + 1]));
    }
    next.push_back(lvl.entries.back());
    lvl.entries = std::move(next);
  }
  return lvl;
}

std::vector<FareyInterval> partition_segments(int d) {
  if (d < 0) throw std::invalid_argument("partition_segments: depth must be >= 0");
  FareyLevel lvl = farey_level(d + 1);
  std::vector<FareyInterval> segs;
  segs.reserve(lvl.entries.size() - 1);
  for (std::size_t i = 0; i + 1 < lvl.entries.size(); ++i)
    segs.push_back(FareyInterval{lvl.entries[i], lvl.entries[i + 1], d});
  return segs;
}

FareyInterval covering_segment(const Fraction& x, int level) {
  if (level < 1) throw std::invalid_argument("covering_segment: level must be >= 1");
  if (!(x < Fraction(BigInt(1))))
    throw std::invalid_argument("covering_segment: point must lie in [0, 1)");
  Fraction l(BigInt(0), BigInt(1)), r(BigInt(1), BigInt(1));
  for (int cur = 1; cur < level; ++cur) {
    Fraction m = mediant(l, r);
    if (x < m) r = std::move(m);
    else l = std::move(m);  // half-open convention: x == m goes right
  }
  return FareyInterval{l, r, level - 1};
}

FareyInterval covering_segment(const Fraction& lo, const Fraction& hi, int level) {
  if (level < 1) throw std::invalid_argument("covering_segment: level must be >= 1");
  if (hi <= lo)
    throw std::invalid_argument("covering_segment: open bracket needs lo < hi");
  if (Fraction(BigInt(1)) < hi)
    throw std::invalid_argument("covering_segment: bracket must lie inside [0, 1]");
  Fraction l(BigInt(0), BigInt(1)), r(BigInt(1), BigInt(1));
  for (int cur = 1; cur < level; ++cur) {
    Fraction m = mediant(l, r);
    if (hi <= m) r = std::move(m);       // certain: x < hi <= m
    else if (lo >= m) l = std::move(m);  // certain: x > lo >= m
    else throw BracketStraddles(lo, hi, cur + 1);
  }
  return FareyInterval{l, r, level - 1};
}

namespace {
void gather_subtree(const Fraction& l, const Fraction& r, int depth,
                    std::vector<Fraction>& out) {
  if (depth <= 0) return;
  Fraction m = mediant(l, r);
  gather_subtree(l, m, depth - 1, out);
  out.push_back(m);
  gather_subtree(m, r, depth - 1, out);
}
}  // namespace

std::vector<Fraction> subtree_fractions(const FareyInterval& seg, int extra_depth) {
  if (extra_depth < 0)
    throw std::invalid_argument("subtree_fractions: extra_depth must be >= 0");
  if (extra_depth > 24)
    throw std::invalid_argument("subtree_fractions: extra_depth too large to materialize");
  std::vector<Fraction> out;
  out.reserve((std::size_t(1) << extra_depth) - 1);
  gather_subtree(seg.left, seg.right, extra_depth, out);
  return out;
}

}  // namespace fbstairs
