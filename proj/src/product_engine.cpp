#include "pball/product_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pball/compensated.hpp"

namespace pball {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sum_{k > K} 1/k^2 = psi'(K+1), asymptotic expansion (K >= 15 here).
double tail_sum_k2(double K) {
  const double ix = 1.0 / (K + 1.0);
  const double ix2 = ix * ix;
  return ix * (1.0 + ix * (0.5 + ix * (1.0 / 6.0 + ix2 * (-1.0 / 30.0 + ix2 * (1.0 / 42.0)))));
}

// sum_{k > K} 1/k^3, same Euler-Maclaurin treatment.
double tail_sum_k3(double K) {
  const double ix = 1.0 / (K + 1.0);
  const double ix2 = ix * ix;
  return ix2 * (0.5 + ix * (0.5 + ix * (0.25 - ix2 / 12.0)));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

// Geometrically spaced unique integers spanning [lo, hi].
std::vector<std::int64_t> window_samples(std::int64_t lo, std::int64_t hi) {
  constexpr int kTarget = 48;
  std::vector<std::int64_t> ks;
  ks.reserve(kTarget);
  const double ratio = double(hi) / double(lo);
  for (int i = 0; i < kTarget; ++i) {
    const double f = double(i) / double(kTarget - 1);
    auto k = std::int64_t(std::llround(double(lo) * std::pow(ratio, f)));
    k = std::clamp(k, lo, hi);
    if (ks.empty() || k != ks.back()) ks.push_back(k);
  }
  return ks;
}

struct WindowStats {
  double w_hi_median = 0.0;  // median |k^2 t_k| over the last third
  double w_lo_median = 0.0;  // ... over the first third
  double t_hi_median = 0.0;  // median |t_k| over the last third
  double t_lo_median = 0.0;
  double alpha = 0.0;        // fit of k^2 t_k ~ alpha + beta/k
  double beta = 0.0;
  double fit_rms = 0.0;
};

WindowStats analyze_window(const LogTermFn& term, std::int64_t K) {
  const std::int64_t lo = std::max<std::int64_t>(1, K / 10);
  const auto ks = window_samples(lo, K);

  const std::size_t n = ks.size();
  std::vector<double> w(n), abst(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = term(ks[i]);
    w[i] = double(ks[i]) * double(ks[i]) * t;
    abst[i] = std::abs(t);
  }

  WindowStats st;
  const std::size_t third = std::max<std::size_t>(1, n / 3);
  std::vector<double> lo_w(third), hi_w(third), lo_t(third), hi_t(third);
  for (std::size_t i = 0; i < third; ++i) {
    lo_w[i] = std::abs(w[i]);
    lo_t[i] = abst[i];
    hi_w[i] = std::abs(w[n - 1 - i]);
    hi_t[i] = abst[n - 1 - i];
  }
  st.w_lo_median = median(lo_w);
  st.w_hi_median = median(hi_w);
  st.t_lo_median = median(lo_t);
  st.t_hi_median = median(hi_t);

  // Least squares for w = alpha + beta * (1/k).
  double sx = 0, sxx = 0, sw = 0, sxw = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 1.0 / double(ks[i]);
    sx += x;
    sxx += x * x;
    sw += w[i];
    sxw += x * w[i];
  }
  const double dn = double(n);
  const double det = dn * sxx - sx * sx;
  if (det > 0.0) {
    st.beta = (dn * sxw - sx * sw) / det;
    st.alpha = (sw - st.beta * sx) / dn;
  } else {
    st.alpha = sw / dn;
  }
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = w[i] - (st.alpha + st.beta / double(ks[i]));
    ss += r * r;
  }
  st.fit_rms = std::sqrt(ss / dn);
  return st;
}

}  // namespace

void TruncationPolicy::validate() const {
  if (max_terms < 16)
    throw std::invalid_argument("TruncationPolicy: max_terms must be >= 16");
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::invalid_argument("TruncationPolicy: rel_tol must be in (0, 1)");
}

ProductEval eval_log_product(const LogTermFn& term, const TruncationPolicy& policy) {
  policy.validate();

  NeumaierSum acc;
  double sum_abs = 0.0;

  struct Checkpoint {
    std::int64_t k;
    double partial;
  };
  std::vector<Checkpoint> cps;

  int divergence_strikes = 0;
  int flat_strikes = 0;
  double prev_w_hi = 0.0;

  ProductEval out;
  std::int64_t next_cp = 16;

  for (std::int64_t k = 1; k <= policy.max_terms; ++k) {
    const double t = term(k);
    if (!std::isfinite(t))
      throw std::domain_error("eval_log_product: term(" + std::to_string(k) +
                              ") is not finite");
    acc.add(t);
    sum_abs += std::abs(t);

    if (k != next_cp && k != policy.max_terms) continue;

    const double S = acc.total();
    const WindowStats st = analyze_window(term, k);
    const double s2 = tail_sum_k2(double(k));
    const double noise_floor = 8.0 * kEps * (sum_abs + std::abs(S));

    // Divergence heuristics. Growth of |k^2 t_k| both inside the window and
    // across checkpoints signals a per-term decay slower than 1/k^2; a last
    // decade where |t_k| stops decreasing signals a non-vanishing factor.
    const bool material = st.w_hi_median * s2 > std::max(10.0 * policy.rel_tol, 1e-12);
    const bool window_growth = st.w_hi_median > 2.0 * st.w_lo_median &&
                               st.w_hi_median > 1e3 * kEps * double(k);
    const bool across_growth = prev_w_hi > 0.0 && st.w_hi_median > 1.5 * prev_w_hi;
    if (material && window_growth && across_growth)
      ++divergence_strikes;
    else
      divergence_strikes = 0;

    const double t_floor = 1e3 * kEps * std::max(1.0, std::abs(S)) / double(k);
    if (st.t_hi_median >= st.t_lo_median && st.t_hi_median > t_floor)
      ++flat_strikes;
    else
      flat_strikes = 0;

    prev_w_hi = st.w_hi_median;

    if (divergence_strikes >= 2 || flat_strikes >= 2) {
      ProductEval partial;
      partial.log_value = S;
      partial.value = std::exp(S);
      partial.terms_used = k;
      partial.tail_estimate = 0.0;
      partial.bracket_lower = -std::numeric_limits<double>::infinity();
      partial.bracket_upper = std::numeric_limits<double>::infinity();
      partial.converged = false;
      throw DivergenceSuspected(
          divergence_strikes >= 2
              ? "eval_log_product: k^2*term(k) grows without bound over the sampled window"
              : "eval_log_product: |term(k)| fails to decrease over the last decade",
          partial);
    }

    double tail = 0.0;
    double half_width = 0.0;
    switch (policy.tail_mode) {
      case TailMode::none: {
        tail = 0.0;
        half_width = 2.0 * double(k) * std::abs(term(k)) + noise_floor;
        break;
      }
      case TailMode::first_order: {
        tail = st.alpha * s2 + st.beta * tail_sum_k3(double(k));
        half_width = 4.0 * st.fit_rms * s2 + 1e-6 * std::abs(tail) + noise_floor;
        break;
      }
      case TailMode::richardson: {
        if (cps.size() >= 2) {
          const Checkpoint c1 = cps[cps.size() - 2];
          const Checkpoint c2 = cps[cps.size() - 1];
          const double a32 = (S - c2.partial) / (1.0 / double(c2.k) - 1.0 / double(k));
          const double e32 = S + a32 / double(k);
          const double a21 =
              (c2.partial - c1.partial) / (1.0 / double(c1.k) - 1.0 / double(c2.k));
          const double e21 = c2.partial + a21 / double(c2.k);
          tail = e32 - S;
          half_width = 4.0 * std::abs(e32 - e21) + 1e-6 * std::abs(tail) + noise_floor;
        } else {
          tail = 0.0;
          half_width = 2.0 * double(k) * std::abs(term(k)) + noise_floor;
        }
        break;
      }
    }

    cps.push_back({k, S});

    out.log_value = S + tail;
    out.value = std::exp(out.log_value);
    out.terms_used = k;
    out.tail_estimate = tail;
    out.bracket_lower = out.log_value - half_width;
    out.bracket_upper = out.log_value + half_width;
    out.converged = 2.0 * half_width <= policy.rel_tol;
    if (out.converged || k == policy.max_terms) break;

    next_cp = std::min(next_cp * 2, policy.max_terms);
  }

  return out;
}

double log_upper_bound_sum(double a, double x, std::int64_t K) {
  if (!std::isfinite(a) || !std::isfinite(x))
    throw std::domain_error("log_upper_bound_sum: arguments must be finite");
  if (!(a >= 0.0) || !(a < 1.0))
    throw std::domain_error("log_upper_bound_sum requires 0 <= a < 1");
  if (!(x > 0.0)) throw std::domain_error("log_upper_bound_sum requires x > 0");
  if (K < 1) throw std::domain_error("log_upper_bound_sum requires K >= 1");

  const double kappa = a * (x + a - 1.0);
  const double c = x + a - 1.0;

  NeumaierSum acc;
  for (std::int64_t k = 1; k <= K; ++k) {
    const double kk = double(k);
    acc.add(1.0 / ((kk - a) * (kk + c)));
  }

  // The summand is positive and decreasing, so the tail is bounded above by
  // the integral from K to infinity of dt/((t-a)(t+c)).
  const double denom = a + c;  // x + 2a - 1
  const double Kd = double(K);
  const double tail =
      denom == 0.0 ? 1.0 / (Kd - a) : std::log1p(denom / (Kd - a)) / denom;

  return kappa * (acc.total() + tail);
}

}  // namespace pball
