#pragma once

#include "fbstairs/farey.hpp"
#include "fbstairs/omega.hpp"
#include "fbstairs/staircase.hpp"

#include <utility>
#include <vector>

namespace fbstairs::selfsim {

/// Ordinary least squares line y = slope * x + intercept.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;  // coefficient of determination, clamped to [0, 1]
  int n_points = 0;
  double residual_max = 0.0;  // largest |y_i - (slope x_i + intercept)|
};

/// Fit a line through (x_i, y_i) with intercept. Requires matching lengths,
/// at least two points, and non-constant x (throws std::invalid_argument
/// otherwise). When the y values are all equal, r2 is 1 for a perfect fit
/// and 0 otherwise.
FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Arithmetic mean of the plateau widths that share denominator p.
struct MeanWidthRow {
  long p = 0;
  double mean_width = 0.0;
};

/// Rows for p = 1..p_max. For p >= 2 the mean runs over the reduced
/// fractions q/p inside (0, 1); p = 1 averages the two boundary plateaus
/// 0/1 and 1/1. A width the model cannot produce (denominator beyond its
/// range) rejects the whole table with the list of absent fractions.
std::vector<MeanWidthRow> mean_width_table(const model::StaircaseModel& m,
                                           int p_max);

/// Least squares of ln(mean width at p) against ln p over p = 1..p_max.
/// A staircase whose widths follow (gamma p)^-s exactly comes back with
/// slope -s and r2 = 1 up to rounding.
FitResult fig1_regression(const model::StaircaseModel& m, int p_max);

/// One depth-k dust interval: its measured length (the regression's x)
/// against the Euclidean length of its arrangement segment (the y, exactly
/// 1/(P P') for a segment with unimodular endpoints Q/P, Q'/P').
struct SizePoint {
  FareyInterval label;
  double omega_len = 0.0;
  double fb_len = 0.0;
};

/// Depth-k size comparison: every dust interval contributes one point, and
/// the with-intercept slope of fb_len against omega_len is the level's size
/// ratio m_k. The intercept is reported so proportionality (intercept near
/// zero) is itself checkable. Points are listed in ascending position order.
struct SizesRegression {
  int depth = 0;
  FitResult fit;
  std::vector<SizePoint> points;
};

SizesRegression sizes_regression(const model::StaircaseModel& m, int k);

/// How the per-level size ratios m_k grow with k.
struct SlopeLaw {
  std::vector<std::pair<int, double>> entries;  // (k, m_k), consecutive k
  FitResult linear_fit;                         // m_k against k
  std::vector<int> weak_fit_ks;  // levels whose inner fit had r2 < 0.9
};

/// Collect m_k = sizes_regression(m, k).fit.slope for k = k_min..k_max and
/// fit the sequence linearly in k. Requires k_min >= 2 and at least two
/// levels (throws std::invalid_argument otherwise). Levels whose inner fit
/// explains little variance (r2 < 0.9) are flagged but still contribute.
SlopeLaw slope_law(const model::StaircaseModel& m, int k_min, int k_max);

}  // namespace fbstairs::selfsim
