#include "fbstairs/contfrac.hpp"

#include "fbstairs/farey.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fbstairs::cf {

namespace mp = boost::multiprecision;

PartialQuotients::PartialQuotients(std::vector<BigInt> digits)
    : digits_(std::move(digits)) {
  if (digits_.empty())
    throw std::invalid_argument("PartialQuotients: digit list must be non-empty");
  for (const BigInt& a : digits_)
    if (a < 1)
      throw std::invalid_argument("PartialQuotients: every digit must be >= 1");
}

const BigInt& PartialQuotients::digit(std::size_t n) const {
  if (n < 1 || n > digits_.size())
    throw std::out_of_range("PartialQuotients::digit: index out of range");
  return digits_[n - 1];
}

PartialQuotients PartialQuotients::canonical() const {
  if (digits_.size() >= 2 && digits_.back() == 1) {
    std::vector<BigInt> d(digits_.begin(), digits_.end() - 1);
    d.back() += 1;
    return PartialQuotients(std::move(d));
  }
  return *this;
}

std::vector<Convergent> convergents(const PartialQuotients& pq, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > pq.size())
    throw std::invalid_argument("convergents: need 1 <= n <= digit count");
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(n));
  BigInt q_prev = 1, p_prev = 0;  // index -1
  BigInt q_cur = 0, p_cur = 1;    // index 0
  for (int k = 1; k <= n; ++k) {
    const BigInt& a = pq.digit(static_cast<std::size_t>(k));
    BigInt q_next = a * q_cur + q_prev;
    BigInt p_next = a * p_cur + p_prev;
    out.push_back(Convergent{k, q_next, p_next});
    q_prev = q_cur;
    p_prev = p_cur;
    q_cur = q_next;
    p_cur = p_next;
  }
  return out;
}

PartialQuotients cf_of_fraction(const Fraction& f) {
  if (f.is_zero() || f >= Fraction(BigInt(1)))
    throw std::domain_error("cf_of_fraction: argument must lie in (0, 1)");
  std::vector<BigInt> digits;
  BigInt num = f.den(), den = f.num();  // expand den/num of 1/f
  while (den != 0) {
    digits.push_back(num / den);
    BigInt r = num % den;
    num = den;
    den = r;
  }
  return PartialQuotients(std::move(digits)).canonical();
}

BigInt continuant(std::span<const BigInt> digits) {
  BigInt k_prev = 0, k_cur = 1;  // K of one-shorter-than-empty, K of empty
  for (const BigInt& a : digits) {
    BigInt k_next = a * k_cur + k_prev;
    k_prev = k_cur;
    k_cur = k_next;
  }
  return k_cur;
}

bool split_identity_check(std::span<const BigInt> b, std::span<const BigInt> a) {
  std::vector<BigInt> joined(b.begin(), b.end());
  joined.insert(joined.end(), a.begin(), a.end());
  const BigInt lhs = continuant(joined);
  const BigInt kb = continuant(b);
  const BigInt ka = continuant(a);
  const BigInt kb_short = b.empty() ? BigInt(0) : continuant(b.first(b.size() - 1));
  const BigInt ka_short = a.empty() ? BigInt(0) : continuant(a.subspan(1));
  return lhs == kb * ka + kb_short * ka_short;
}

std::pair<Fraction, Fraction> continuation_bracket(const PartialQuotients& pq) {
  const auto convs = convergents(pq, static_cast<int>(pq.size()));
  const Fraction last = convs.back().value();
  const Fraction prev =
      convs.size() >= 2 ? convs[convs.size() - 2].value() : Fraction();
  const Fraction lo = std::min(prev, last);
  const Fraction hi = std::max(prev, last);
  const Fraction med = mediant(lo, hi);
  return {std::min(last, med), std::max(last, med)};
}

bool approximation_bounds_check(const PartialQuotients& pq, int n) {
  if (n < 1 || pq.size() < static_cast<std::size_t>(n) + 2)
    throw std::invalid_argument(
        "approximation_bounds_check: need digits through index n + 2");
  const auto convs = convergents(pq, n + 2);
  const Convergent& cn = convs[static_cast<std::size_t>(n) - 1];
  const Convergent& cn1 = convs[static_cast<std::size_t>(n)];
  const Convergent& cn2 = convs[static_cast<std::size_t>(n) + 1];
  // |i - c_n| lies strictly between |c_{n+2} - c_n| and |c_{n+1} - c_n| for
  // every continuation past index n + 2, so the law follows whenever
  //   |c_{n+2} - c_n| >= 1/(p_n (p_n + p_{n+1}))  and
  //   |c_{n+1} - c_n| <= 1/(p_n p_{n+1}).
  const Fraction dist_lo = Fraction::abs_diff(cn2.value(), cn.value());
  const Fraction dist_hi = Fraction::abs_diff(cn1.value(), cn.value());
  const Fraction law_lo(BigInt(1), cn.p * (cn.p + cn1.p));
  const Fraction law_hi(BigInt(1), cn.p * cn1.p);
  return dist_lo >= law_lo && dist_hi <= law_hi;
}

bool is_convergent(const PartialQuotients& pq, const Fraction& r, int horizon) {
  const int n = std::min<int>(horizon, static_cast<int>(pq.size()));
  if (n < 1) return false;
  for (const Convergent& c : convergents(pq, n))
    if (c.value() == r) return true;
  return false;
}

namespace {

// Smallest integer s >= 2 with s^theta >= 2, i.e. s^t_num >= 2^t_den.
long smallest_admissible_s(const Fraction& theta) {
  const unsigned tn = theta.num().convert_to<unsigned>();
  const unsigned td = theta.den().convert_to<unsigned>();
  const BigInt two_pow = BigInt(1) << td;
  auto admissible = [&](long s) { return mp::pow(BigInt(s), tn) >= two_pow; };
  long hi = 2;
  while (!admissible(hi)) hi *= 2;
  long lo = hi == 2 ? 2 : hi / 2;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (admissible(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// dist^t_den * s^t_num vs 1, exactly: sign of num^q * s^p - den^q.
int cmp_dist_pow(const Fraction& dist, long s, unsigned p, unsigned q) {
  const BigInt lhs = mp::pow(dist.num(), q) * mp::pow(BigInt(s), p);
  const BigInt rhs = mp::pow(dist.den(), q);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

Claim1Report claim1_oracle(const PartialQuotients& pq, const Fraction& beta,
                           const Fraction& theta, long s_max) {
  if (theta.is_zero() || theta >= Fraction(BigInt(1)))
    throw std::invalid_argument("claim1_oracle: theta must lie in (0, 1)");
  if (beta < Fraction(BigInt(2)))
    throw std::invalid_argument("claim1_oracle: beta must be >= 2");
  if (s_max < 1) throw std::invalid_argument("claim1_oracle: s_max must be >= 1");

  Claim1Report report;
  report.s_min = smallest_admissible_s(theta);
  report.s_max = s_max;
  if (report.s_min > s_max) {
    report.empty_domain = true;
    return report;
  }

  const auto [blo, bhi] = continuation_bracket(pq);
  const double i_dbl = (blo.to_double() + bhi.to_double()) / 2.0;
  const Fraction exponent = beta + theta;  // bound is s^-(beta+theta)
  const unsigned ep = exponent.num().convert_to<unsigned>();
  const unsigned eq = exponent.den().convert_to<unsigned>();
  const double exp_dbl = exponent.to_double();
  const int horizon = static_cast<int>(pq.size());

  for (long s = report.s_min; s <= s_max; ++s) {
    const double thr = std::exp(-exp_dbl * std::log(static_cast<double>(s)));
    const long r0 = std::lround(i_dbl * static_cast<double>(s));
    for (long r = r0 - 1; r <= r0 + 1; ++r) {
      if (r < 0 || r > s) continue;
      if (std::gcd(r, s) != 1) continue;
      // Coarse reject with a 4x margin plus absolute fp slack; the true
      // distance cannot beat the bound once the double distance clears this.
      const double d_dbl =
          std::abs(i_dbl - static_cast<double>(r) / static_cast<double>(s));
      if (d_dbl > 4.0 * thr + 1e-14) continue;
      ++report.candidates_checked;

      const Fraction rs{BigInt(r), BigInt(s)};
      bool satisfied;
      if (rs <= blo || rs >= bhi) {
        const Fraction d_near = rs <= blo ? Fraction::abs_diff(blo, rs)
                                          : Fraction::abs_diff(rs, bhi);
        const Fraction d_far = rs <= blo ? Fraction::abs_diff(bhi, rs)
                                         : Fraction::abs_diff(rs, blo);
        if (cmp_dist_pow(d_far, s, ep, eq) <= 0) {
          satisfied = true;  // even the far edge beats the bound
        } else if (cmp_dist_pow(d_near, s, ep, eq) >= 0) {
          satisfied = false;  // even the near edge misses the bound
        } else {
          ++report.borderline;
          satisfied = true;  // undecidable from the stored digits; be safe
        }
        if (satisfied && !is_convergent(pq, rs, horizon) &&
            cmp_dist_pow(d_far, s, ep, eq) <= 0) {
          // Certified satisfier that is outside the continuation bracket can
          // only be one of the stored convergents, so this is a genuine
          // counterexample.
          report.violations.push_back(rs);
        }
      } else {
        // Inside the bracket: some continuations make r/s a deeper convergent
        // and others do not, so no verdict is possible from the prefix.
        ++report.borderline;
      }
    }
  }
  return report;
}

TypeEstimate beta_estimate_from_logs(const std::vector<double>& lp, int N,
                                     int window, BetaEstimateOptions opts) {
  if (N < 2) throw std::invalid_argument("beta_estimate: need N >= 2");
  if (lp.size() < static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("beta_estimate: need logs through p_{N+1}");

  TypeEstimate est;
  est.opts = opts;
  int first = 0;
  for (int n = 1; n <= N; ++n) {
    if (lp[static_cast<std::size_t>(n) - 1] > 0.0) {
      first = n;
      break;
    }
  }
  if (first == 0 || first > N)
    throw std::invalid_argument("beta_estimate: denominators never exceed 1");
  est.first_index = first;

  for (int n = first; n <= N; ++n) {
    const double lpn = lp[static_cast<std::size_t>(n) - 1];
    const double lpn1 = lp[static_cast<std::size_t>(n)];
    est.ratio_series.push_back(lpn1 / lpn);
    est.exponent_series.push_back(lpn / (lpn + lpn1));
  }

  const int len = static_cast<int>(est.ratio_series.size());
  int w = window > 0 ? window : std::max(3, N / 4);
  w = std::min(w, len);
  est.window = w;
  const auto tail_begin = est.ratio_series.end() - w;

  est.beta_hat = 1.0 + *std::max_element(tail_begin, est.ratio_series.end());

  for (int n = first; n <= N; ++n) {
    const double lpn = lp[static_cast<std::size_t>(n) - 1];
    const double lpn1 = lp[static_cast<std::size_t>(n)];
    est.kappa_series.push_back(std::exp((lpn + lpn1) / est.beta_hat - lpn));
  }

  bool increasing = true;
  for (auto it = tail_begin + 1; it != est.ratio_series.end(); ++it)
    if (*it <= *(it - 1)) increasing = false;
  const double tail_max = *std::max_element(tail_begin, est.ratio_series.end());
  const double tail_min = *std::min_element(tail_begin, est.ratio_series.end());
  const double mean_inc =
      w >= 2 ? (est.ratio_series.back() - *tail_begin) / (w - 1) : 0.0;
  const bool divergent = est.ratio_series.back() > opts.ginf_ratio_threshold ||
                         mean_inc >= opts.ginf_increment_floor;
  if (increasing && divergent)
    est.label = TypeLabel::g_infinity;
  else if (tail_max - tail_min <= opts.spread_threshold)
    est.label = TypeLabel::finite_beta;
  else
    est.label = TypeLabel::inconclusive;
  return est;
}

TypeEstimate beta_estimate(const PartialQuotients& pq, int N, int window,
                           BetaEstimateOptions opts) {
  if (N < 2) throw std::invalid_argument("beta_estimate: need N >= 2");
  if (pq.size() < static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("beta_estimate: need digits through N + 1");
  const auto convs = convergents(pq, N + 1);
  std::vector<double> lp;
  lp.reserve(convs.size());
  for (const Convergent& c : convs) lp.push_back(log_big(c.p));
  return beta_estimate_from_logs(lp, N, window, opts);
}

LiouvilleDigits liouville_digits(const BigInt& a1, int count) {
  if (a1 < 1) throw std::invalid_argument("liouville_digits: a1 must be >= 1");
  if (count < 1) throw std::invalid_argument("liouville_digits: count must be >= 1");
  std::vector<BigInt> digits{a1};
  BigInt p_prev = 1, p_cur = a1;
  for (int n = 2; n <= count; ++n) {
    BigInt a = mp::pow(p_cur, static_cast<unsigned>(n - 1)) + 1;
    digits.push_back(a);
    BigInt p_next = a * p_cur + p_prev;
    p_prev = p_cur;
    p_cur = p_next;
  }
  LiouvilleDigits out{PartialQuotients(std::move(digits)), count > 8};
  return out;
}

std::optional<int> type_k_witness(const PartialQuotients& pq, int k) {
  if (k < 1) throw std::invalid_argument("type_k_witness: k must be >= 1");
  if (pq.size() < 2) return std::nullopt;
  const auto convs = convergents(pq, static_cast<int>(pq.size()));
  for (std::size_t n = 1; n + 1 <= convs.size(); ++n) {
    const BigInt& pn = convs[n - 1].p;
    const BigInt& pn1 = convs[n].p;
    if (mp::pow(pn, static_cast<unsigned>(k - 1)) <= pn1)
      return static_cast<int>(n);
  }
  return std::nullopt;
}

ClaimProbeReport claim2_claim3_probe(const PartialQuotients& pq, const Fraction& beta,
                                     const Fraction& delta, const Fraction& theta,
                                     int N) {
  if (N < 2) throw std::invalid_argument("claim2_claim3_probe: need N >= 2");
  if (pq.size() < static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("claim2_claim3_probe: need digits through N + 1");
  if (delta.is_zero() || theta.is_zero())
    throw std::invalid_argument("claim2_claim3_probe: delta, theta must be > 0");
  if (theta >= beta)
    throw std::invalid_argument("claim2_claim3_probe: need theta < beta");

  const auto convs = convergents(pq, N + 1);
  const Fraction up = beta + delta;                    // law A exponent
  const Fraction down = Fraction::abs_diff(beta, theta);  // law B exponent
  const unsigned up_p = up.num().convert_to<unsigned>();
  const unsigned up_q = up.den().convert_to<unsigned>();
  const unsigned dn_p = down.num().convert_to<unsigned>();
  const unsigned dn_q = down.den().convert_to<unsigned>();

  auto law_a = [&](int n) {
    const BigInt& pn = convs[static_cast<std::size_t>(n) - 1].p;
    const BigInt& pn1 = convs[static_cast<std::size_t>(n)].p;
    return mp::pow(pn * (pn + pn1), up_q) < mp::pow(pn, up_p);
  };
  auto law_b = [&](int n) {
    const BigInt& pn = convs[static_cast<std::size_t>(n) - 1].p;
    const BigInt& pn1 = convs[static_cast<std::size_t>(n)].p;
    return mp::pow(pn, dn_p) < mp::pow(pn * pn1, dn_q);
  };

  ClaimProbeReport report;
  report.N = N;
  report.window = std::max(3, N / 4);

  std::optional<int> least;
  for (int n = N; n >= 1; --n) {
    if (!law_a(n)) break;
    least = n;
  }
  report.n_delta = least;

  for (int n = std::max(1, N - report.window + 1); n <= N; ++n)
    if (law_b(n)) report.witnesses.push_back(n);

  report.inconclusive = !report.n_delta.has_value() || report.witnesses.empty();
  return report;
}

namespace {

PartialQuotients constant_digits(int n, int value) {
  if (n < 1) throw std::invalid_argument("digit fixture: need n >= 1");
  return PartialQuotients(std::vector<BigInt>(static_cast<std::size_t>(n),
                                              BigInt(value)));
}

}  // namespace

PartialQuotients golden_digits(int n) { return constant_digits(n, 1); }
PartialQuotients silver_digits(int n) { return constant_digits(n, 2); }

PartialQuotients arithmetic_digits(int n) {
  if (n < 1) throw std::invalid_argument("digit fixture: need n >= 1");
  std::vector<BigInt> d;
  d.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) d.emplace_back(k);
  return PartialQuotients(std::move(d));
}

PartialQuotients alternating_digits(int n) {
  if (n < 1) throw std::invalid_argument("digit fixture: need n >= 1");
  std::vector<BigInt> d;
  d.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) d.emplace_back(k % 2 == 1 ? 1 : 2);
  return PartialQuotients(std::move(d));
}

PartialQuotients power_calibrated_digits(const Fraction& beta, int n,
                                         unsigned max_bits) {
  if (n < 1) throw std::invalid_argument("power_calibrated_digits: need n >= 1");
  if (beta < Fraction(BigInt(2)))
    throw std::invalid_argument("power_calibrated_digits: beta must be >= 2");
  // Exponent beta - 2 = (num - 2 den)/den, already in lowest terms.
  const BigInt exp_num_big = beta.num() - 2 * beta.den();
  const unsigned exp_num = exp_num_big.convert_to<unsigned>();
  const unsigned exp_den = beta.den().convert_to<unsigned>();

  std::vector<BigInt> digits{BigInt(2)};
  BigInt p_prev = 1, p_cur = 2;
  for (int k = 2; k <= n; ++k) {
    BigInt a(1);
    if (exp_num > 0) {
      const unsigned long long projected =
          static_cast<unsigned long long>(msb(p_cur) + 1) * exp_num;
      if (projected > static_cast<unsigned long long>(max_bits) * exp_den)
        throw std::overflow_error(
            "power_calibrated_digits: growth exceeds the bit budget; use "
            "power_calibrated_series");
      a = iroot_ceil(mp::pow(p_cur, exp_num), exp_den);
      if (a < 1) a = 1;
    }
    digits.push_back(a);
    BigInt p_next = a * p_cur + p_prev;
    p_prev = p_cur;
    p_cur = p_next;
  }
  return PartialQuotients(std::move(digits));
}

namespace {

// Best small-denominator rational for t in [0, 1) by a bounded Stern-Brocot
// descent; exact for the grid values the calibrated fixtures use.
Fraction small_rational(double t) {
  if (t <= 1e-12) return Fraction();
  BigInt lq = 0, lp = 1, rq = 1, rp = 1;  // [0/1, 1/1]
  for (int step = 0; step < 64; ++step) {
    const BigInt mq = lq + rq, mp_ = lp + rp;
    const double m = mq.convert_to<double>() / mp_.convert_to<double>();
    if (std::abs(m - t) < 1e-9 || mp_ > 4096) return Fraction(mq, mp_);
    if (t < m) {
      rq = mq;
      rp = mp_;
    } else {
      lq = mq;
      lp = mp_;
    }
  }
  return Fraction(lq + rq, lp + rp);
}

}  // namespace

PowerSeries power_calibrated_series(double beta, int n) {
  if (n < 1) throw std::invalid_argument("power_calibrated_series: need n >= 1");
  if (beta < 2.0)
    throw std::invalid_argument("power_calibrated_series: beta must be >= 2");
  PowerSeries out;
  out.log_p.reserve(static_cast<std::size_t>(n) + 1);

  const Fraction frac_exp = small_rational(std::min(beta - 2.0, 0.999999));
  const bool integer_part_large = beta - 2.0 >= 1.0;
  Fraction exact_exp = frac_exp;
  if (integer_part_large) {
    const BigInt whole(static_cast<long>(std::floor(beta - 2.0)));
    exact_exp = Fraction(frac_exp.num() + whole * frac_exp.den(), frac_exp.den());
  }
  const unsigned exp_num = exact_exp.num().convert_to<unsigned>();
  const unsigned exp_den = exact_exp.den().convert_to<unsigned>();

  constexpr unsigned kExactBits = 1u << 16;
  BigInt p_prev = 1, p_cur = 2;
  out.log_p.push_back(log_big(p_cur));
  double lp_prev = 0.0, lp_cur = out.log_p.back();
  bool exact = true;

  for (int k = 2; k <= n + 1; ++k) {
    if (exact && exp_num > 0) {
      const unsigned long long projected =
          static_cast<unsigned long long>(msb(p_cur) + 1) * exp_num;
      if (projected > static_cast<unsigned long long>(kExactBits) * exp_den)
        exact = false;
    }
    if (exact) {
      BigInt a(1);
      if (exp_num > 0) a = iroot_ceil(mp::pow(p_cur, exp_num), exp_den);
      BigInt p_next = a * p_cur + p_prev;
      p_prev = p_cur;
      p_cur = p_next;
      lp_prev = lp_cur;
      lp_cur = log_big(p_cur);
    } else {
      out.exact_throughout = false;
      const double la = std::max(0.0, (beta - 2.0) * lp_cur);
      const double lp_next = la + lp_cur + std::log1p(std::exp(lp_prev - la - lp_cur));
      lp_prev = lp_cur;
      lp_cur = lp_next;
    }
    out.log_p.push_back(lp_cur);
  }
  return out;
}

}  // namespace fbstairs::cf
