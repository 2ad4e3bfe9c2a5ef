#pragma once

#include "fbstairs/farey.hpp"
#include "fbstairs/fraction.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fbstairs::model {

/// Horizontal extent of one staircase step (plateau), in staircase
/// coordinates. residual bounds the effect of whatever truncation or solver
/// tolerance produced the numbers; converged reports whether the producer hit
/// its tolerance.
struct StepSpan {
  double x_left = 0.0;
  double x_right = 0.0;
  bool converged = true;
  double residual = 0.0;
  double width() const { return x_right - x_left; }
};

/// A complete devil's-staircase model: every rational in [0, 1] owns one
/// plateau, positioned so that the right edge of the 0/1 plateau sits at 0.
class StaircaseModel {
 public:
  virtual ~StaircaseModel() = default;

  virtual std::string model_id() const = 0;
  virtual double step_width(const Fraction& f) const = 0;
  virtual StepSpan step_span(const Fraction& f) const = 0;

  /// [right edge of the 0/1 plateau, left edge of the 1/1 plateau].
  virtual std::pair<double, double> core_domain() const;

  /// Length of the set between the plateaus of l and r (exclusive):
  /// step_span(r).x_left - step_span(l).x_right unless a model can do better.
  virtual double gap_length(const Fraction& l, const Fraction& r) const;
};

/// Steps weighted by (gamma P)^-(a+1) for every reduced Q/P with P <= p_max,
/// laid out in value order. The truncated table is the model: spans are exact
/// partial sums (Kahan), and residual carries the tail bound
/// gamma^-(a+1) p_max^(1-a) / (a-1) of the discarded denominators (infinite
/// for a <= 1, where the full series diverges and only the truncated
/// staircase exists).
class IsingModel : public StaircaseModel {
 public:
  explicit IsingModel(double a = 2.0, double gamma = 2.0, int p_max = 1024);

  std::string model_id() const override { return "ising"; }
  double step_width(const Fraction& f) const override;
  StepSpan step_span(const Fraction& f) const override;
  /// Exact-by-construction mirror symmetry: widths are summed grouped by
  /// denominator (count * width per P, ascending), so mirrored gaps produce
  /// bit-identical lengths.
  double gap_length(const Fraction& l, const Fraction& r) const override;

  double a() const { return a_; }
  double gamma() const { return gamma_; }
  int p_max() const { return p_max_; }
  double tail_bound() const;
  std::size_t table_size() const { return table_.size(); }

 private:
  struct Entry {
    std::int32_t q;
    std::int32_t p;
    double width;
    double prefix;  // Kahan sum of all widths strictly before this entry
  };
  const Entry& find(const Fraction& f) const;

  double a_;
  double gamma_;
  int p_max_;
  std::vector<Entry> table_;
};

/// Left edge of the plateau of f in the untruncated weighted staircase,
/// summed over denominators up to p_max, with the same origin convention.
/// Requires a > 1: below that the infinite sum has no limit.
struct DomainPosition {
  double x = 0.0;
  double tail_bound = 0.0;
};
DomainPosition ising_domain_position(const Fraction& f, double a, double gamma,
                                     int p_max = 4096);

/// The middle-thirds staircase arranged on the mediant tree: the plateau of a
/// fraction first materialized at tree level L has width 3^(1-L) (L(Q/P) =
/// digit sum of the expansion of Q/P; L = 1 for the endpoints, whose plateaus
/// are [-1, 0] and [1, 2]). Spans are computed by descending one third at a
/// time; the model is exact, with core domain [0, 1].
class TernaryModel : public StaircaseModel {
 public:
  std::string model_id() const override { return "ternary"; }
  double step_width(const Fraction& f) const override;
  StepSpan step_span(const Fraction& f) const override;
  std::pair<double, double> core_domain() const override { return {0.0, 1.0}; }
};

/// One plateau per entry of farey_level(level), in ascending value order.
struct StaircaseRow {
  Fraction f;
  StepSpan span;
};
std::vector<StaircaseRow> assemble_staircase(const StaircaseModel& model,
                                             int level);

}  // namespace fbstairs::model
