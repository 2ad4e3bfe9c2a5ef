#include "fbstairs/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fbstairs::omega {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

/// log(sum_i exp(x_i)) with the usual max shift; index order fixed.
double log_sum_exp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

void require_fractal_lengths(const OmegaApprox& approx, const char* who) {
  if (!(approx.domain_length > 0.0))
    throw std::invalid_argument(std::string(who) +
                                ": domain length must be positive");
  for (const OmegaInterval& iv : approx.intervals)
    if (!(iv.length > 0.0) || iv.length >= approx.domain_length)
      throw std::invalid_argument(
          std::string(who) +
          ": every interval must be shorter than the domain");
}

/// log of the relative length length_i / domain_length.
double log_rel_length(const OmegaApprox& approx, const OmegaInterval& iv) {
  return std::log(iv.length) - std::log(approx.domain_length);
}

/// log of sum_i p^q r_i^-tau at p = 2^-depth, r_i relative length.
double log_partition_sum(const OmegaApprox& approx, double q, double tau) {
  std::vector<double> xs;
  xs.reserve(approx.intervals.size());
  const double log_p = -approx.depth * kLn2;
  for (const OmegaInterval& iv : approx.intervals)
    xs.push_back(q * log_p - tau * log_rel_length(approx, iv));
  return log_sum_exp(xs);
}

std::size_t interval_index(const OmegaApprox& approx, const FareyInterval& seg) {
  const auto it = std::lower_bound(
      approx.intervals.begin(), approx.intervals.end(), seg.left,
      [](const OmegaInterval& iv, const Fraction& x) { return iv.label.left < x; });
  if (it == approx.intervals.end() || !(it->label.left == seg.left) ||
      !(it->label.right == seg.right))
    throw std::logic_error("alpha_along: covering segment missing from approx");
  return static_cast<std::size_t>(it - approx.intervals.begin());
}

}  // namespace

double OmegaApprox::total_length() const {
  double sum = 0.0, carry = 0.0;
  for (const OmegaInterval& iv : intervals) {
    const double y = iv.length - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

OmegaApprox omega_approx(const model::StaircaseModel& m, int k) {
  if (k < 0) throw std::invalid_argument("omega_approx: depth must be >= 0");

  std::vector<std::string> stalled;
  for (const Fraction& f : farey_level(k + 1).entries)
    if (!m.step_span(f).converged) stalled.push_back(f.str());
  if (!stalled.empty()) {
    std::ostringstream msg;
    msg << "omega_approx: non-converged plateaus:";
    for (const std::string& s : stalled) msg << ' ' << s;
    throw std::runtime_error(msg.str());
  }

  OmegaApprox out;
  out.depth = k;
  out.model_id = m.model_id();
  const auto core = m.core_domain();
  out.domain_length = core.second - core.first;
  if (!(out.domain_length > 0.0))
    throw std::runtime_error("omega_approx: degenerate model domain");
  for (const FareyInterval& seg : partition_segments(k)) {
    const double len = m.gap_length(seg.left, seg.right);
    if (!(len > 0.0))
      throw std::runtime_error("omega_approx: nonpositive dust length between " +
                               seg.left.str() + " and " + seg.right.str());
    out.intervals.push_back(OmegaInterval{seg, len});
  }
  return out;
}

double alpha_index(const OmegaApprox& approx, std::size_t i) {
  if (i >= approx.intervals.size())
    throw std::invalid_argument("alpha_index: interval index out of range");
  if (!(approx.domain_length > 0.0))
    throw std::invalid_argument("alpha_index: domain length must be positive");
  const double len = approx.intervals[i].length;
  if (!(len > 0.0) || len >= approx.domain_length)
    throw std::domain_error(
        "alpha_index: undefined unless the interval is shorter than the domain");
  return -approx.depth * kLn2 / log_rel_length(approx, approx.intervals[i]);
}

double tau_of_q(const OmegaApprox& approx, double q) {
  require_fractal_lengths(approx, "tau_of_q");
  if (approx.intervals.empty())
    throw std::invalid_argument("tau_of_q: empty approximation");

  double lo = -64.0, hi = 64.0;
  while (log_partition_sum(approx, q, lo) > 0.0) lo *= 2.0;
  while (log_partition_sum(approx, q, hi) < 0.0) hi *= 2.0;
  double mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = log_partition_sum(approx, q, mid);
    if (std::abs(g) <= 1e-13) return mid;
    if (g > 0.0) hi = mid;
    else lo = mid;
  }
  return mid;
}

std::vector<SpectrumPoint> spectrum(const OmegaApprox& approx,
                                    const std::vector<double>& q_grid) {
  require_fractal_lengths(approx, "spectrum");
  std::vector<SpectrumPoint> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    const double tau = tau_of_q(approx, q);
    // normalized weights w_i = p^q r_i^-tau / sum; the constant p^q cancels
    std::vector<double> xs;
    xs.reserve(approx.intervals.size());
    for (const OmegaInterval& iv : approx.intervals)
      xs.push_back(-tau * log_rel_length(approx, iv));
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    double norm = 0.0, mean_log_len = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double w = std::exp(xs[i] - m);
      norm += w;
      mean_log_len += w * log_rel_length(approx, approx.intervals[i]);
    }
    mean_log_len /= norm;

    SpectrumPoint pt;
    pt.q = q;
    pt.tau = tau;
    pt.alpha = (-approx.depth * kLn2) / mean_log_len;
    pt.f = q * pt.alpha - tau;
    out.push_back(pt);
  }
  return out;
}

double dimension_estimate(const OmegaApprox& approx) {
  return -tau_of_q(approx, 0.0);
}

std::vector<double> default_q_grid() {
  std::vector<double> grid;
  grid.reserve(81);
  const double scale = std::sinh(4.0);
  for (int j = 0; j <= 80; ++j) {
    const double u = (j - 40) / 40.0;
    grid.push_back(20.0 * std::sinh(4.0 * u) / scale);
  }
  grid[0] = -20.0;
  grid[40] = 0.0;
  grid[80] = 20.0;
  return grid;
}

std::vector<double> alpha_along(const std::vector<OmegaApprox>& approxes,
                                const Fraction& target) {
  if (target.is_zero() || target == Fraction(BigInt(1)) ||
      target > Fraction(BigInt(1)))
    throw std::invalid_argument(
        "alpha_along: target must lie strictly inside (0, 1)");
  std::vector<double> out;
  out.reserve(approxes.size());
  for (const OmegaApprox& approx : approxes) {
    const FareyInterval seg = covering_segment(target, approx.depth + 1);
    out.push_back(alpha_index(approx, interval_index(approx, seg)));
  }
  return out;
}

std::vector<double> alpha_along(const std::vector<OmegaApprox>& approxes,
                                const cf::PartialQuotients& target) {
  if (target.size() < 2)
    throw std::invalid_argument("alpha_along: need at least two digits");
  const auto cs = cf::convergents(target, static_cast<int>(target.size()));
  Fraction lo = cs[cs.size() - 2].value();
  Fraction hi = cs[cs.size() - 1].value();
  if (hi < lo) std::swap(lo, hi);
  std::vector<double> out;
  out.reserve(approxes.size());
  for (const OmegaApprox& approx : approxes) {
    const FareyInterval seg = covering_segment(lo, hi, approx.depth + 1);
    out.push_back(alpha_index(approx, interval_index(approx, seg)));
  }
  return out;
}

}  // namespace fbstairs::omega
