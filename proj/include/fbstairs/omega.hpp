#pragma once

#include "fbstairs/contfrac.hpp"
#include "fbstairs/farey.hpp"
#include "fbstairs/fraction.hpp"
#include "fbstairs/staircase.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fbstairs::omega {

/// One interval of the depth-k dust approximation: the set left between two
/// adjacent plateaus, labeled by the mediant-tree segment it descends from.
/// Each interval carries probability 2^-depth regardless of its length.
struct OmegaInterval {
  FareyInterval label;
  double length = 0.0;
};

/// Depth-k approximation of the dust left between a staircase's plateaus:
/// 2^k intervals in ascending label order, each of measure 2^-k. Interval
/// lengths are stored absolute; concentration indices measure them relative
/// to domain_length, the span of the depth-0 interval, so that the dust of a
/// staircase plays the same role as a subdivided unit interval.
struct OmegaApprox {
  int depth = 0;
  std::string model_id;
  double domain_length = 1.0;
  std::vector<OmegaInterval> intervals;

  /// Sum of interval lengths in index order (deterministic, compensated).
  double total_length() const;
};

/// The 2^k dust intervals of depth k: one per partition segment, with length
/// model.gap_length over the segment. Throws std::runtime_error naming every
/// offending fraction when the model reports a non-converged plateau among
/// the bounding steps, and std::invalid_argument for k < 0.
OmegaApprox omega_approx(const model::StaircaseModel& m, int k);

/// Concentration index of interval i: alpha = -depth ln 2 / ln r_i, where
/// r_i = length_i / domain_length, the exponent matching
/// measure = r_i^alpha. Requires r_i < 1 (throws std::domain_error
/// otherwise) and a valid index.
double alpha_index(const OmegaApprox& approx, std::size_t i);

/// The unique tau with sum_i p_i^q r_i^-tau = 1, p_i = 2^-depth and
/// r_i = length_i / domain_length, found by bisection on the (strictly
/// increasing in tau) log of the sum until the sum is within 1e-12 of 1.
/// Requires every relative length r_i in (0, 1).
double tau_of_q(const OmegaApprox& approx, double q);

/// One evaluated point of the multifractal spectrum; f = q alpha - tau by
/// construction.
struct SpectrumPoint {
  double q = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
  double f = 0.0;
};

/// The spectrum along q_grid: tau from tau_of_q and alpha from the implicit
/// derivative sum w_i ln p_i / sum w_i ln r_i with normalized weights
/// w_i = p_i^q r_i^-tau and relative lengths r_i = length_i / domain_length.
/// Summation is index-ordered, so results do not depend on evaluation
/// schedule. Requires every relative length in (0, 1).
std::vector<SpectrumPoint> spectrum(const OmegaApprox& approx,
                                    const std::vector<double>& q_grid);

/// Box-counting dimension of the depth-k cover: -tau_of_q(approx, 0), the D
/// solving sum_i r_i^D = 1 for the relative lengths r_i.
double dimension_estimate(const OmegaApprox& approx);

/// 81 grid points on [-20, 20], clustered near 0: 20 sinh(4u)/sinh(4) for u
/// uniform on [-1, 1]. Contains -20, 0, and 20 exactly; strictly ascending.
std::vector<double> default_q_grid();

/// Concentration indices of the nested intervals covering the target across
/// a series of approximations (one per element, any depths). Rational targets
/// resolve through the left-closed covering rule; the endpoints 0/1 and 1/1
/// are rejected. The digit form brackets an irrational by its two deepest
/// convergents and requires at least two digits; a bracket wider than the
/// requested depth surfaces as BracketStraddles.
std::vector<double> alpha_along(const std::vector<OmegaApprox>& approxes,
                                const Fraction& target);
std::vector<double> alpha_along(const std::vector<OmegaApprox>& approxes,
                                const cf::PartialQuotients& target);

}  // namespace fbstairs::omega
