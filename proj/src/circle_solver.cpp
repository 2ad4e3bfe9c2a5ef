#include "fbstairs/circle.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fbstairs::model {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double iterate_lift(double phi, double omega, long p) {
  for (long i = 0; i < p; ++i) phi = circle_map_step(phi, omega);
  return phi;
}

// h(phi) = f^p(phi) - phi - q, periodic in phi with period 1
double h_value(double phi, double omega, long q, long p) {
  return iterate_lift(phi, omega, p) - phi - static_cast<double>(q);
}

template <typename Fn>
double golden_peak(Fn&& fn, double a, double b, int iters, bool maximize) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  double best = maximize ? std::max(fc, fd) : std::min(fc, fd);
  for (int i = 0; i < iters; ++i) {
    const bool keep_left = maximize ? fc > fd : fc < fd;
    if (keep_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
    best = maximize ? std::max({best, fc, fd}) : std::min({best, fc, fd});
  }
  return best;
}

struct HExtremes {
  double max_h;
  double min_h;
};

HExtremes h_extremes(double omega, long q, long p, const CircleSolverConfig& cfg) {
  const int grid = std::max(cfg.phase_grid, static_cast<int>(8 * p));
  double max_h = -std::numeric_limits<double>::infinity();
  double min_h = std::numeric_limits<double>::infinity();
  double arg_max = 0.0, arg_min = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double phi = static_cast<double>(i) / grid;
    const double h = h_value(phi, omega, q, p);
    if (h > max_h) {
      max_h = h;
      arg_max = phi;
    }
    if (h < min_h) {
      min_h = h;
      arg_min = phi;
    }
  }
  const double cell = 1.0 / grid;
  auto fn = [&](double phi) { return h_value(phi, omega, q, p); };
  max_h = std::max(max_h, golden_peak(fn, arg_max - cell, arg_max + cell,
                                      cfg.refine_iters, true));
  min_h = std::min(min_h, golden_peak(fn, arg_min - cell, arg_min + cell,
                                      cfg.refine_iters, false));
  return {max_h, min_h};
}

void validate_rotation(long q, long p, const CircleSolverConfig& cfg) {
  if (p < 1 || q < 0 || q > p)
    throw std::invalid_argument("circle solver: need 0 <= q <= p, p >= 1");
  if (std::gcd(q, p) != 1)
    throw std::invalid_argument("circle solver: q/p must be in lowest terms");
  if (p > cfg.max_period)
    throw std::invalid_argument("circle solver: period exceeds max_period");
  if (!(cfg.omega_tol > 0.0) || cfg.phase_grid < 16 || cfg.refine_iters < 1)
    throw std::invalid_argument("circle solver: bad configuration");
}

}  // namespace

double circle_map_step(double phi, double omega) {
  return phi + omega + std::sin(kTwoPi * phi) / kTwoPi;
}

double winding_number(double omega, int iters) {
  if (iters < 1) throw std::invalid_argument("winding_number: iters must be >= 1");
  double phi = 0.0;
  for (int i = 0; i < iters; ++i) phi = circle_map_step(phi, omega);
  return phi / iters;
}

LockProbe locking_test(double omega, long q, long p, const CircleSolverConfig& cfg) {
  validate_rotation(q, p, cfg);
  const HExtremes ext = h_extremes(omega, q, p, cfg);
  LockProbe probe;
  probe.max_h = ext.max_h;
  probe.min_h = ext.min_h;
  probe.margin = std::min(ext.max_h, -ext.min_h);
  probe.locked = probe.margin >= 0.0;
  return probe;
}

LockingInterval solve_tongue(long q, long p, const CircleSolverConfig& cfg) {
  validate_rotation(q, p, cfg);
  const double center = static_cast<double>(q) / static_cast<double>(p);
  // |f(phi) - phi - omega| <= 1/(2 pi), so the whole plateau lies within
  // this padding of q/p
  const double pad = 1.0 / kTwoPi + 0.01;

  LockingInterval out;
  out.q = q;
  out.p = p;
  out.converged = true;

  // left edge: smallest omega with max_h >= 0 (max_h increases with omega)
  {
    double lo = center - pad, hi = center + pad;
    if (h_extremes(lo, q, p, cfg).max_h >= 0.0 ||
        h_extremes(hi, q, p, cfg).max_h < 0.0)
      out.converged = false;
    while (hi - lo > cfg.omega_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {  // floating point floor reached
        out.converged = false;
        break;
      }
      if (h_extremes(mid, q, p, cfg).max_h >= 0.0) hi = mid;
      else lo = mid;
    }
    out.omega_minus = 0.5 * (lo + hi);
    out.residual = hi - lo;
  }

  // right edge: largest omega with min_h <= 0 (min_h increases with omega)
  {
    double lo = center - pad, hi = center + pad;
    if (h_extremes(lo, q, p, cfg).min_h > 0.0 ||
        h_extremes(hi, q, p, cfg).min_h <= 0.0)
      out.converged = false;
    while (hi - lo > cfg.omega_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        out.converged = false;
        break;
      }
      if (h_extremes(mid, q, p, cfg).min_h <= 0.0) lo = mid;
      else hi = mid;
    }
    out.omega_plus = 0.5 * (lo + hi);
    out.residual = std::max(out.residual, hi - lo);
  }

  if (out.omega_minus > out.omega_plus) out.converged = false;
  return out;
}

namespace {

std::string config_line(const CircleSolverConfig& cfg) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "# config omega_tol=%.17g phase_grid=%d refine_iters=%d "
                "max_period=%d",
                cfg.omega_tol, cfg.phase_grid, cfg.refine_iters, cfg.max_period);
  return buf;
}

}  // namespace

LockCache::LockCache(std::string path, const CircleSolverConfig& cfg)
    : path_(std::move(path)), cfg_(cfg) {
  namespace fs = std::filesystem;
  if (fs::exists(path_)) {
    std::ifstream in(path_);
    if (!in) throw std::runtime_error("LockCache: cannot read " + path_);
    std::string line;
    if (!std::getline(in, line) || line != "# fbstairs-lock-cache v1")
      throw CacheConfigMismatch("LockCache: unrecognized header in " + path_);
    if (!std::getline(in, line) || line != config_line(cfg_))
      throw CacheConfigMismatch("LockCache: configuration mismatch in " + path_);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      long q = 0, p = 0;
      double om = 0.0, op = 0.0, tol = 0.0;
      int grid = 0, refine = 0;
      if (std::sscanf(line.c_str(), "%ld,%ld,%lg,%lg,%lg,%d,%d", &q, &p, &om,
                      &op, &tol, &grid, &refine) != 7)
        throw CacheConfigMismatch("LockCache: corrupt record in " + path_);
      if (tol != cfg_.omega_tol || grid != cfg_.phase_grid ||
          refine != cfg_.refine_iters)
        throw CacheConfigMismatch("LockCache: record configuration mismatch in " +
                                  path_);
      entries_[{q, p}] = {om, op};
    }
  } else {
    std::ofstream out(path_);
    if (!out) throw std::runtime_error("LockCache: cannot create " + path_);
    out << "# fbstairs-lock-cache v1\n" << config_line(cfg_) << "\n";
  }
}

std::optional<std::pair<double, double>> LockCache::lookup(long q, long p) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = entries_.find({q, p});
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void LockCache::store(long q, long p, double omega_minus, double omega_plus) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!entries_.emplace(std::pair{q, p}, std::pair{omega_minus, omega_plus})
           .second)
    return;  // already persisted
  char buf[200];
  std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g,%.17g,%d,%d\n", q, p,
                omega_minus, omega_plus, cfg_.omega_tol, cfg_.phase_grid,
                cfg_.refine_iters);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("LockCache: cannot append to " + path_);
  out << buf;
}

long LockCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

long LockCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

std::size_t LockCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

CircleMapModel::CircleMapModel(CircleSolverConfig cfg,
                               std::shared_ptr<LockCache> cache)
    : cfg_(cfg), cache_(std::move(cache)) {}

LockingInterval CircleMapModel::tongue(const Fraction& f) const {
  if (f.den() > cfg_.max_period)
    throw std::domain_error("CircleMapModel: denominator exceeds max_period");
  const long q = f.num().convert_to<long>();
  const long p = f.den().convert_to<long>();

  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = memo_.find({q, p});
    if (it != memo_.end()) return it->second;
  }

  LockingInterval solved;
  if (cache_) {
    if (const auto hit = cache_->lookup(q, p)) {
      solved.q = q;
      solved.p = p;
      solved.omega_minus = hit->first;
      solved.omega_plus = hit->second;
      solved.converged = true;
      solved.residual = cfg_.omega_tol;
      std::lock_guard<std::mutex> lock(mu_);
      return memo_.emplace(std::pair{q, p}, solved).first->second;
    }
  }

  solved = solve_tongue(q, p, cfg_);
  if (cache_ && solved.converged)
    cache_->store(q, p, solved.omega_minus, solved.omega_plus);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(std::pair{q, p}, solved).first->second;
}

double CircleMapModel::step_width(const Fraction& f) const {
  return tongue(f).width();
}

StepSpan CircleMapModel::step_span(const Fraction& f) const {
  const LockingInterval t = tongue(f);
  return StepSpan{t.omega_minus, t.omega_plus, t.converged, t.residual};
}

void CircleMapModel::solve_many(const std::vector<Fraction>& fractions,
                                int jobs) const {
  if (jobs <= 1 || fractions.size() <= 1) {
    for (const Fraction& f : fractions) tongue(f);
    return;
  }
  std::atomic<std::size_t> next{0};
  const int workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), fractions.size());
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= fractions.size()) return;
        tongue(fractions[i]);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace fbstairs::model
