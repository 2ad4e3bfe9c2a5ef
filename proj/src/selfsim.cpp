#include "fbstairs/selfsim.hpp"

#include "fbstairs/fraction.hpp"
#include "fbstairs/omega.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fbstairs::selfsim {

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("linear_fit: mismatched input lengths");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("linear_fit: needs at least two points");

  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("linear_fit: x values are all equal");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.n_points = static_cast<int>(n);

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
    fit.residual_max = std::max(fit.residual_max, std::abs(r));
  }
  if (syy > 0.0)
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  else
    fit.r2 = ss_res == 0.0 ? 1.0 : 0.0;
  return fit;
}

std::vector<MeanWidthRow> mean_width_table(const model::StaircaseModel& m,
                                           int p_max) {
  if (p_max < 1)
    throw std::invalid_argument("mean_width_table: p_max must be at least 1");

  std::vector<MeanWidthRow> rows;
  std::vector<std::string> absent;
  for (long p = 1; p <= p_max; ++p) {
    double sum = 0.0;
    long count = 0;
    const auto add = [&](long q) {
      const Fraction f{BigInt(q), BigInt(p)};
      try {
        sum += m.step_width(f);
        ++count;
      } catch (const std::exception&) {
        absent.push_back(f.str());
      }
    };
    if (p == 1) {
      add(0);
      add(1);
    } else {
      for (long q = 1; q < p; ++q)
        if (std::gcd(q, p) == 1) add(q);
    }
    rows.push_back(MeanWidthRow{p, count > 0 ? sum / static_cast<double>(count)
                                             : 0.0});
  }
  if (!absent.empty()) {
    std::ostringstream msg;
    msg << "mean_width_table: widths unavailable for";
    for (const std::string& s : absent) msg << ' ' << s;
    throw std::invalid_argument(msg.str());
  }
  return rows;
}

FitResult fig1_regression(const model::StaircaseModel& m, int p_max) {
  const std::vector<MeanWidthRow> rows = mean_width_table(m, p_max);
  std::vector<double> x, y;
  x.reserve(rows.size());
  y.reserve(rows.size());
  for (const MeanWidthRow& row : rows) {
    if (!(row.mean_width > 0.0))
      throw std::domain_error("fig1_regression: nonpositive mean width at p = " +
                              std::to_string(row.p));
    x.push_back(std::log(static_cast<double>(row.p)));
    y.push_back(std::log(row.mean_width));
  }
  return linear_fit(x, y);
}

SizesRegression sizes_regression(const model::StaircaseModel& m, int k) {
  const omega::OmegaApprox approx = omega::omega_approx(m, k);

  SizesRegression out;
  out.depth = k;
  std::vector<double> x, y;
  x.reserve(approx.intervals.size());
  y.reserve(approx.intervals.size());
  for (const omega::OmegaInterval& iv : approx.intervals) {
    const double fb =
        Fraction::abs_diff(iv.label.right, iv.label.left).to_double();
    out.points.push_back(SizePoint{iv.label, iv.length, fb});
    x.push_back(iv.length);
    y.push_back(fb);
  }
  out.fit = linear_fit(x, y);
  return out;
}

SlopeLaw slope_law(const model::StaircaseModel& m, int k_min, int k_max) {
  if (k_min < 2)
    throw std::invalid_argument("slope_law: k_min must be at least 2");
  if (k_max <= k_min)
    throw std::invalid_argument(
        "slope_law: need at least two consecutive levels");

  SlopeLaw law;
  std::vector<double> xs, ys;
  for (int k = k_min; k <= k_max; ++k) {
    const SizesRegression reg = sizes_regression(m, k);
    law.entries.emplace_back(k, reg.fit.slope);
    if (reg.fit.r2 < 0.9) law.weak_fit_ks.push_back(k);
    xs.push_back(static_cast<double>(k));
    ys.push_back(reg.fit.slope);
  }
  law.linear_fit = selfsim::linear_fit(xs, ys);
  return law;
}

}  // namespace fbstairs::selfsim
