#include "fbstairs/staircase.hpp"

#include "fbstairs/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fbstairs::model {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::pair<double, double> StaircaseModel::core_domain() const {
  const StepSpan zero = step_span(Fraction());
  const StepSpan one = step_span(Fraction(BigInt(1)));
  return {zero.x_right, one.x_left};
}

double StaircaseModel::gap_length(const Fraction& l, const Fraction& r) const {
  if (l >= r) throw std::invalid_argument("gap_length: need l < r");
  return step_span(r).x_left - step_span(l).x_right;
}

IsingModel::IsingModel(double a, double gamma, int p_max)
    : a_(a), gamma_(gamma), p_max_(p_max) {
  if (!(a > 0.0)) throw std::invalid_argument("IsingModel: a must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("IsingModel: gamma must be > 0");
  if (p_max < 1 || p_max > 20000)
    throw std::invalid_argument("IsingModel: p_max out of range [1, 20000]");

  for (std::int32_t p = 1; p <= p_max; ++p) {
    const double width = std::pow(gamma_ * p, -(a_ + 1.0));
    for (std::int32_t q = 0; q <= p; ++q) {
      if (std::gcd(q, p) != 1) continue;
      table_.push_back(Entry{q, p, width, 0.0});
    }
  }
  std::sort(table_.begin(), table_.end(), [](const Entry& x, const Entry& y) {
    return static_cast<std::int64_t>(x.q) * y.p <
           static_cast<std::int64_t>(y.q) * x.p;
  });
  KahanSum run;
  for (Entry& e : table_) {
    e.prefix = run.sum;
    run.add(e.width);
  }
}

double IsingModel::step_width(const Fraction& f) const {
  if (f.den() > p_max_)
    throw std::domain_error("IsingModel: denominator beyond the table");
  return std::pow(gamma_ * f.den().convert_to<double>(), -(a_ + 1.0));
}

const IsingModel::Entry& IsingModel::find(const Fraction& f) const {
  if (f.den() > p_max_)
    throw std::domain_error("IsingModel: denominator beyond the table");
  const std::int64_t fq = f.num().convert_to<std::int64_t>();
  const std::int64_t fp = f.den().convert_to<std::int64_t>();
  const auto it = std::lower_bound(
      table_.begin(), table_.end(), f, [&](const Entry& e, const Fraction&) {
        return static_cast<std::int64_t>(e.q) * fp < fq * e.p;
      });
  return *it;  // every reduced fraction with den <= p_max is present
}

StepSpan IsingModel::step_span(const Fraction& f) const {
  const Entry& e = find(f);
  const double w0 = table_.front().width;  // plateau of 0/1
  StepSpan span;
  span.x_left = e.prefix - w0;
  span.x_right = span.x_left + e.width;
  span.converged = true;
  span.residual = tail_bound();
  return span;
}

double IsingModel::tail_bound() const {
  if (a_ <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(gamma_, -(a_ + 1.0)) * std::pow(p_max_, 1.0 - a_) / (a_ - 1.0);
}

double IsingModel::gap_length(const Fraction& l, const Fraction& r) const {
  if (l >= r) throw std::invalid_argument("gap_length: need l < r");
  KahanSum total;
  for (long p = 1; p <= p_max_; ++p) {
    // strict interior: l < q/p < r
    const BigInt qlo_big = (l.num() * p) / l.den() + 1;
    BigInt qhi_big = (r.num() * p) / r.den();
    if (r.num() * p == qhi_big * r.den()) qhi_big -= 1;
    const long qlo = qlo_big.convert_to<long>();
    const long qhi = qhi_big.convert_to<long>();
    long count = 0;
    for (long q = qlo; q <= qhi; ++q)
      if (std::gcd(q, p) == 1) ++count;
    if (count > 0) {
      const double width = std::pow(gamma_ * p, -(a_ + 1.0));
      total.add(static_cast<double>(count) * width);
    }
  }
  return total.sum;
}

DomainPosition ising_domain_position(const Fraction& f, double a, double gamma,
                                     int p_max) {
  if (!(a > 1.0))
    throw std::domain_error(
        "ising_domain_position: needs a > 1 (the untruncated sum diverges)");
  if (!(gamma > 0.0))
    throw std::invalid_argument("ising_domain_position: gamma must be > 0");
  if (p_max < 1)
    throw std::invalid_argument("ising_domain_position: p_max must be >= 1");

  // sum of widths of every reduced q/p with 0/1 < q/p < f, grouped by p
  KahanSum total;
  for (long p = 1; p <= p_max; ++p) {
    BigInt qhi_big = (f.num() * p) / f.den();
    if (f.num() * p == qhi_big * f.den()) qhi_big -= 1;
    const long qhi = qhi_big.convert_to<long>();
    long count = 0;
    for (long q = 1; q <= qhi; ++q)
      if (std::gcd(q, p) == 1) ++count;
    if (count > 0)
      total.add(static_cast<double>(count) * std::pow(gamma * p, -(a + 1.0)));
  }
  DomainPosition out;
  out.x = total.sum;
  out.tail_bound =
      std::pow(gamma, -(a + 1.0)) * std::pow(p_max, 1.0 - a) / (a - 1.0);
  return out;
}

double TernaryModel::step_width(const Fraction& f) const {
  if (f.is_zero() || f == Fraction(BigInt(1))) return 1.0;
  if (f > Fraction(BigInt(1)))
    throw std::domain_error("TernaryModel: fraction must lie in [0, 1]");
  const cf::PartialQuotients pq = cf::cf_of_fraction(f);
  BigInt level = 0;
  for (const BigInt& d : pq.digits()) level += d;
  if (level > 2000)
    throw std::domain_error("TernaryModel: level too deep to represent");
  return std::pow(3.0, 1.0 - level.convert_to<double>());
}

StepSpan TernaryModel::step_span(const Fraction& f) const {
  if (f.is_zero()) return StepSpan{-1.0, 0.0, true, 0.0};
  if (f == Fraction(BigInt(1))) return StepSpan{1.0, 2.0, true, 0.0};
  if (f > Fraction(BigInt(1)))
    throw std::domain_error("TernaryModel: fraction must lie in [0, 1]");

  Fraction left, right{BigInt(1)};
  double x_left = 0.0, x_right = 1.0;
  while (true) {
    const Fraction m = mediant(left, right);
    const double third = (x_right - x_left) / 3.0;
    if (f == m)
      return StepSpan{x_left + third, x_right - third, true, 0.0};
    if (f < m) {
      right = m;
      x_right = x_left + third;
    } else {
      left = m;
      x_left = x_right - third;
    }
  }
}

std::vector<StaircaseRow> assemble_staircase(const StaircaseModel& model,
                                             int level) {
  std::vector<StaircaseRow> rows;
  for (const Fraction& f : farey_level(level).entries)
    rows.push_back(StaircaseRow{f, model.step_span(f)});
  return rows;
}

}  // namespace fbstairs::model
