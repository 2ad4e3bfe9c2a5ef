#pragma once

#include "fbstairs/fraction.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fbstairs::cf {

/// Finite list of partial quotients a_1, a_2, ... (each >= 1), read either as
/// a rational's canonical expansion or as the stored prefix of an irrational's
/// infinite expansion. Indexing in the API is 1-based to match the usual
/// recurrences; storage is 0-based.
class PartialQuotients {
 public:
  explicit PartialQuotients(std::vector<BigInt> digits);

  std::size_t size() const { return digits_.size(); }
  const BigInt& digit(std::size_t n) const;  // 1-based
  const std::vector<BigInt>& digits() const { return digits_; }

  /// Canonical finite form: a trailing 1 is folded into its predecessor,
  /// so the last digit is >= 2 unless the expansion has length 1.
  PartialQuotients canonical() const;

 private:
  std::vector<BigInt> digits_;
};

/// Convergent q/p of index n (q = numerator, p = denominator, gcd = 1).
struct Convergent {
  int n = 0;
  BigInt q;
  BigInt p;
  Fraction value() const { return Fraction(q, p); }
};

/// Convergents 1..n of pq via q_{k+1} = a_{k+1} q_k + q_{k-1} (and same for p),
/// seeded with q_0 = 0, p_0 = 1, q_{-1} = 1, p_{-1} = 0. Requires 1 <= n <= size.
std::vector<Convergent> convergents(const PartialQuotients& pq, int n);

/// Canonical expansion of f in (0, 1).
PartialQuotients cf_of_fraction(const Fraction& f);

/// Continuant K(a_1..a_m): K() = 1, K(a) = a, K(a_1..a_m) =
/// a_m K(a_1..a_{m-1}) + K(a_1..a_{m-2}). Equals the denominator of the
/// convergent of the same digits.
BigInt continuant(std::span<const BigInt> digits);

/// K(b || a) == K(b) K(a) + K(b minus last) K(a minus first), exact integers.
bool split_identity_check(std::span<const BigInt> b, std::span<const BigInt> a);

/// Exact open bracket around every irrational continuation of pq beyond its
/// stored digits: the interval between c_N and mediant(c_{N-1}, c_N), sorted.
/// Requires size >= 1 (with c_0 = 0/1 as the left anchor for size 1).
std::pair<Fraction, Fraction> continuation_bracket(const PartialQuotients& pq);

/// Verifies the two-sided approximation law at index n:
///   1/(p_n (p_n + p_{n+1})) < |i - q_n/p_n| < 1/(p_n p_{n+1})
/// for every irrational continuation of pq, by exact rational interval
/// arithmetic (no floating point). Requires size >= n + 2.
bool approximation_bounds_check(const PartialQuotients& pq, int n);

/// True when r equals one of the first min(horizon, size) convergents.
bool is_convergent(const PartialQuotients& pq, const Fraction& r, int horizon);

/// Exhaustive check of the convergent-forcing bound: every fraction r/s with
/// ceil(2^(1/theta)) <= s <= s_max and |i - r/s| < 1/s^(beta+theta) must be a
/// convergent of i. Violations are collected, never asserted here.
struct Claim1Report {
  long s_min = 0;
  long s_max = 0;
  bool empty_domain = false;       // s_max < s_min: nothing to scan
  long candidates_checked = 0;
  long borderline = 0;             // bracket could not separate; counted, then
                                   // resolved conservatively as satisfying
  std::vector<Fraction> violations;
};

/// beta and theta are exact rationals (e.g. 5/2 and 3/10); the bound test is
/// done with integer power comparisons. Requires theta in (0,1), beta >= 2.
Claim1Report claim1_oracle(const PartialQuotients& pq, const Fraction& beta,
                           const Fraction& theta, long s_max);

/// Growth-type estimate from the denominator logs.
struct BetaEstimateOptions {
  double ginf_ratio_threshold = 10.0;  // tail ratios beyond this: divergent
  double ginf_increment_floor = 0.5;   // mean tail increment marking divergence
  double spread_threshold = 0.75;      // tail max-min beyond this: inconclusive
};

enum class TypeLabel { finite_beta, g_infinity, inconclusive };

struct TypeEstimate {
  double beta_hat = 0.0;
  TypeLabel label = TypeLabel::inconclusive;
  int first_index = 0;                  // n of ratio_series.front()
  int window = 0;                       // tail width used for the estimate
  std::vector<double> ratio_series;     // r_n = ln p_{n+1} / ln p_n
  std::vector<double> exponent_series;  // ln p_n / (ln p_n + ln p_{n+1}) -> 1/beta
  std::vector<double> kappa_series;     // (1/p_n) / eps_n^(1/beta_hat), diagnostic
  BetaEstimateOptions opts;
};

/// Core form: lp[k] = ln p_{k+1} for k = 0 .. N (so lp.size() >= N + 1).
/// beta_hat = 1 + max ratio over the last `window` indices <= N;
/// window = 0 picks the default max(3, N/4).
TypeEstimate beta_estimate_from_logs(const std::vector<double>& lp, int N,
                                     int window = 0, BetaEstimateOptions opts = {});

/// Digit form; requires size >= N + 1 and N >= 2.
TypeEstimate beta_estimate(const PartialQuotients& pq, int N, int window = 0,
                           BetaEstimateOptions opts = {});

/// Quasi-rational digits a_n = p_{n-1}^(n-1) + 1 (n >= 2), seeded with a_1.
/// Denominators grow super-exponentially; count > 8 sets oversized (the
/// integers beyond that are enormous and every downstream use slows sharply).
struct LiouvilleDigits {
  PartialQuotients digits;
  bool oversized = false;
};
LiouvilleDigits liouville_digits(const BigInt& a1, int count);

/// Smallest n witnessing membership in the approximation class of order k:
/// p_n^(k-1) <= p_{n+1}, which forces |i - q_n/p_n| < 1/p_n^k. Searches
/// n <= size - 1; nullopt when no stored index witnesses it.
std::optional<int> type_k_witness(const PartialQuotients& pq, int k);

/// Finite-horizon probe of the two growth laws behind the dimension bound:
///   law A (all large n):  p_n (p_n + p_{n+1}) < p_n^(beta+delta)
///   law B (witnesses):    p_n^(beta-theta)    < p_n p_{n+1}
/// n_delta is the least n such that law A holds from n through N; witnesses
/// collects law-B indices in the tail window. inconclusive when either side
/// comes up empty. Exact integer comparisons; beta, delta, theta rational.
struct ClaimProbeReport {
  std::optional<int> n_delta;
  std::vector<int> witnesses;
  bool inconclusive = true;
  int N = 0;
  int window = 0;
};
ClaimProbeReport claim2_claim3_probe(const PartialQuotients& pq, const Fraction& beta,
                                     const Fraction& delta, const Fraction& theta,
                                     int N);

// --- digit fixtures ---------------------------------------------------------

PartialQuotients golden_digits(int n);       // 1,1,1,...
PartialQuotients silver_digits(int n);       // 2,2,2,...
PartialQuotients arithmetic_digits(int n);   // 1,2,3,...,n
PartialQuotients alternating_digits(int n);  // 1,2,1,2,...

/// Exact calibrated digits a_{k+1} = max(1, ceil(p_k^(beta-2))) with a_1 = 2,
/// which force ln p_{n+1}/ln p_n -> beta - 1. beta rational >= 2. Throws
/// std::overflow_error when the integers would exceed max_bits.
PartialQuotients power_calibrated_digits(const Fraction& beta, int n,
                                         unsigned max_bits = 1u << 20);

/// Same growth law evaluated as denominator logs, switching from exact
/// integers to log-space recurrence when the integers get too large; usable
/// for any real beta >= 2 (beta = 4 exceeds every integer budget quickly).
struct PowerSeries {
  std::vector<double> log_p;  // ln p_1 .. ln p_{n+1}
  bool exact_throughout = true;
};
PowerSeries power_calibrated_series(double beta, int n);

}  // namespace fbstairs::cf
