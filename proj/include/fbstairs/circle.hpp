#pragma once

#include "fbstairs/fraction.hpp"
#include "fbstairs/staircase.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

namespace fbstairs::model {

/// One step of the critical sine circle-map lift:
///   f(phi) = phi + omega + sin(2 pi phi) / (2 pi),
/// a monotone degree-one lift (f' = 1 + cos(2 pi phi) >= 0).
double circle_map_step(double phi, double omega);

/// Orbit-average rotation number estimate (phi_n - phi_0)/n from phi_0 = 0.
double winding_number(double omega, int iters = 8192);

/// Tolerances for the mode-locking solver.
struct CircleSolverConfig {
  double omega_tol = 1e-10;  // target width of each edge bracket
  int phase_grid = 256;      // phase samples, raised to 8 P for period P
  int refine_iters = 48;     // golden-section steps around grid extrema
  int max_period = 256;      // largest step denominator the solver accepts

  friend bool operator==(const CircleSolverConfig&,
                         const CircleSolverConfig&) = default;
};

/// Extremes of h(phi) = f^P(phi) - phi - Q over one period. The rotation
/// number is >= Q/P iff max_h >= 0 and <= Q/P iff min_h <= 0, so the map
/// locks onto Q/P exactly when margin = min(max_h, -min_h) >= 0.
struct LockProbe {
  double max_h = 0.0;
  double min_h = 0.0;
  double margin = 0.0;
  bool locked = false;
};
LockProbe locking_test(double omega, long q, long p,
                       const CircleSolverConfig& cfg = {});

/// Mode-locked plateau of rotation number q/p: omega range [omega_minus,
/// omega_plus]. converged is false when bisection stalled at the floating
/// point floor before reaching omega_tol; residual is the widest remaining
/// edge bracket.
struct LockingInterval {
  long q = 0;
  long p = 1;
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  bool converged = true;
  double residual = 0.0;
  double width() const { return omega_plus - omega_minus; }
};

/// Both plateau edges by bisection against the monotone predicates
/// max_h(omega) >= 0 (left edge) and min_h(omega) <= 0 (right edge), inside
/// the universal bracket q/p -+ (1/(2 pi) + 0.01) that every plateau of q/p
/// must lie in. Requires 0 <= q <= p, gcd(q, p) = 1, p <= cfg.max_period.
LockingInterval solve_tongue(long q, long p, const CircleSolverConfig& cfg = {});

/// Raised when a cache file's recorded solver configuration differs from the
/// one in use.
struct CacheConfigMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Append-only file cache of converged locking intervals, keyed by (q, p).
/// Layout: two '#' header lines (format tag, then the solver configuration),
/// followed by one CSV record per plateau:
///   q,p,omega_minus,omega_plus,omega_tol,phase_grid,refine_iters
/// with doubles rendered to re-readable precision. Loading a file whose
/// header or records disagree with the active configuration throws
/// CacheConfigMismatch. Lookups and appends are thread-safe.
class LockCache {
 public:
  LockCache(std::string path, const CircleSolverConfig& cfg);

  std::optional<std::pair<double, double>> lookup(long q, long p) const;
  void store(long q, long p, double omega_minus, double omega_plus);

  const std::string& path() const { return path_; }
  long hits() const;
  long misses() const;
  std::size_t size() const;

 private:
  std::string path_;
  CircleSolverConfig cfg_;
  mutable std::mutex mu_;
  std::map<std::pair<long, long>, std::pair<double, double>> entries_;
  mutable long hits_ = 0;
  mutable long misses_ = 0;
};

/// Staircase whose plateau for q/p is the mode-locked interval of the
/// critical circle map. Solves on demand, memoizes in memory, and runs
/// through a LockCache when one is attached (only converged intervals are
/// persisted). solve_many prefetches a batch over a small thread pool.
class CircleMapModel : public StaircaseModel {
 public:
  explicit CircleMapModel(CircleSolverConfig cfg = {},
                          std::shared_ptr<LockCache> cache = nullptr);

  std::string model_id() const override { return "circle"; }
  double step_width(const Fraction& f) const override;
  StepSpan step_span(const Fraction& f) const override;

  const CircleSolverConfig& config() const { return cfg_; }
  LockingInterval tongue(const Fraction& f) const;
  void solve_many(const std::vector<Fraction>& fractions, int jobs) const;

 private:
  CircleSolverConfig cfg_;
  std::shared_ptr<LockCache> cache_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<long, long>, LockingInterval> memo_;
};

}  // namespace fbstairs::model
