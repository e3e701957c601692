#include "pball/volume_product.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pball/compensated.hpp"
#include "pball/special.hpp"

namespace pball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_inf(double p) { return std::isinf(p) && p > 0.0; }

void check_exponent(double p) {
  if (std::isnan(p) || p < 1.0 || (std::isinf(p) && p < 0.0))
    throw std::domain_error("exponent p must lie in [1, infinity]");
}

void check_finite_interior(double p) {
  check_exponent(p);
  if (p == 1.0 || is_inf(p))
    throw std::domain_error("this operation requires 1 < p < infinity");
}

void check_dimension(int n) {
  if (n < 1) throw std::domain_error("dimension n must be >= 1");
}

// sin(pi/p) without cancellation: for p < 2 the angle pi/p is near pi, so
// use sin(pi/p) = sin(pi (p-1)/p) instead.
double sin_pi_over(double p) {
  return p >= 2.0 ? std::sin(kPi / p) : std::sin(kPi * ((p - 1.0) / p));
}

ProductEval shift_log(ProductEval pe, double log_shift) {
  const double pad = 8.0 * kEps * std::max(1.0, std::abs(log_shift));
  pe.log_value += log_shift;
  pe.value = std::exp(pe.log_value);
  pe.bracket_lower += log_shift - pad;
  pe.bracket_upper += log_shift + pad;
  return pe;
}

}  // namespace

HolderPair holder_conjugate(double p) {
  check_exponent(p);
  if (p == 1.0) return {1.0, std::numeric_limits<double>::infinity()};
  if (is_inf(p)) return {std::numeric_limits<double>::infinity(), 1.0};
  return {p, p / (p - 1.0)};
}

double log_ball_volume(const BallSpec& spec) {
  check_dimension(spec.n);
  const double n = spec.n;
  if (is_inf(spec.pair.p)) return n * std::numbers::ln2 * 2.0 / 2.0 + (n - n) + n * std::log(2.0);
  const double inv_p = 1.0 / spec.pair.p;
  return n * std::log(2.0) + n * log_gamma(1.0 + inv_p) - log_gamma(1.0 + n * inv_p);
}

double ball_volume(const BallSpec& spec) {
  const double v = std::exp(log_ball_volume(spec));
  if (std::isinf(v))
    throw std::overflow_error("ball_volume exceeds binary64 range; use log_ball_volume");
  return v;
}

double log_mprod_gamma(int n, double p) {
  check_dimension(n);
  const HolderPair pair = holder_conjugate(p);
  const double inv_p = is_inf(pair.p) ? 0.0 : 1.0 / pair.p;
  const double inv_q = is_inf(pair.q) ? 0.0 : 1.0 / pair.q;
  const double nd = n;
  return nd * std::log(4.0) + nd * (log_gamma(1.0 + inv_p) + log_gamma(1.0 + inv_q)) -
         log_gamma(1.0 + nd * inv_p) - log_gamma(1.0 + nd * inv_q);
}

double mprod_gamma(int n, double p) { return std::exp(log_mprod_gamma(n, p)); }

double h_func(double p) {
  check_exponent(p);
  if (p == 1.0 || is_inf(p)) return 1.0;
  const HolderPair pair = holder_conjugate(p);
  return kPi / (pair.p * pair.q * sin_pi_over(p));
}

ProductEval p_product(double x, double a, const TruncationPolicy& policy) {
  if (!std::isfinite(x) || !std::isfinite(a))
    throw std::domain_error("p_product: arguments must be finite");
  if (!(x > 0.0)) throw std::domain_error("p_product requires x > 0");
  if (!(a >= 0.0) || !(a < 1.0)) throw std::domain_error("p_product requires 0 <= a < 1");

  const double kappa = a * (x + a - 1.0);
  const double c = x + a - 1.0;
  return eval_log_product(
      [a, c, kappa](std::int64_t k) {
        const double kk = double(k);
        return std::log1p(kappa / ((kk - a) * (kk + c)));
      },
      policy);
}

double p_gamma_side(double x, double a) {
  if (!std::isfinite(x) || !std::isfinite(a))
    throw std::domain_error("p_gamma_side: arguments must be finite");
  if (!(x > 0.0)) throw std::domain_error("p_gamma_side requires x > 0");
  if (!(a >= 0.0) || !(a < 1.0)) throw std::domain_error("p_gamma_side requires 0 <= a < 1");
  return std::exp(log_gamma(1.0 - a) + log_gamma(x + a) - log_gamma(x));
}

double gamma_np_factorized(int n, double p, const TruncationPolicy& policy) {
  if (n < 2) throw std::domain_error("gamma_np_factorized requires n >= 2");
  check_finite_interior(p);
  const HolderPair pair = holder_conjugate(p);
  const double inv_p = 1.0 / pair.p;
  const double inv_q = 1.0 / pair.q;

  double log_val = log_gamma(inv_p) - double(n - 1) * log_gamma(inv_q);
  for (int m = 1; m <= n - 1; ++m)
    log_val += p_product(double(n - m) / p, inv_p, policy).log_value;
  return std::exp(log_val);
}

IdentityReport pair_product_check(int n, int m, double p, const TruncationPolicy& policy,
                                  double tolerance) {
  if (n < 2) throw std::domain_error("pair_product_check requires n >= 2");
  if (m < 1 || m > n - 1) throw std::domain_error("pair_product_check requires 1 <= m <= n-1");
  check_finite_interior(p);

  const HolderPair pair = holder_conjugate(p);
  const double j = double(n - m);
  const double inv_pq = 1.0 / (pair.p * pair.q);

  const ProductEval left_p = p_product(j / pair.p, 1.0 / pair.p, policy);
  const ProductEval left_q = p_product(j / pair.q, 1.0 / pair.q, policy);
  const double lhs = std::exp(left_p.log_value + left_q.log_value);

  // (k+1)^2/g_k and r_k(j)/r_k(j+1), each folded into a single log1p so the
  // 1/k parts of the two logs cancel exactly.
  const ProductEval combined = eval_log_product(
      [j, inv_pq](std::int64_t k) {
        const double kk = double(k);
        const double d = (kk + 1.0) * (kk + 1.0);
        const double r_next = kk * kk + (j + 1.0) * kk + (j + 1.0) * (j + 1.0) * inv_pq;
        return -std::log1p(-(kk + 1.0 - inv_pq) / d) +
               std::log1p(-(kk + (2.0 * j + 1.0) * inv_pq) / r_next);
      },
      policy);

  const double log_rhs = std::log(pair.p * pair.q) + 2.0 * std::log(j / (j + 1.0)) +
                         combined.log_value;
  const double rhs = std::exp(log_rhs);

  IdentityReport rep;
  rep.identity_id = "pair_product[n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                    ",p=" + std::to_string(p) + "]";
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.abs_dev = std::abs(lhs - rhs);
  rep.rel_dev = rep.abs_dev / std::abs(lhs);
  rep.tolerance = tolerance;
  rep.verdict = rep.rel_dev <= tolerance ? Verdict::verified : Verdict::falsified;
  rep.policy = policy;
  return rep;
}

ProductEval mprod_product(int n, double p, const TruncationPolicy& policy) {
  check_dimension(n);
  check_exponent(p);

  if (n == 1) {
    // Every factor is identically 1 and M(1,p) = 4.
    ProductEval pe;
    pe.log_value = std::log(4.0);
    pe.value = 4.0;
    pe.terms_used = 0;
    pe.tail_estimate = 0.0;
    pe.bracket_lower = pe.bracket_upper = pe.log_value;
    pe.converged = true;
    return pe;
  }

  if (p == 1.0 || is_inf(p)) {
    // Boundary exponents: h and 1/(pq) are indeterminate, but the limit is
    // M(n, 1+) = 4^n s_n.
    return shift_log(s_product(n, policy), double(n) * std::log(4.0));
  }

  const HolderPair pair = holder_conjugate(p);
  const double inv_pq = 1.0 / (pair.p * pair.q);
  const double b = double(n) * double(n) * inv_pq;
  const double nm2 = double(n - 2);

  const ProductEval pe = eval_log_product(
      [inv_pq, b, nm2](std::int64_t k) {
        const double kp1 = double(k) + 1.0;
        const double d = kp1 * kp1;
        return nm2 * std::log1p(-(kp1 - inv_pq) / d) + std::log1p((nm2 * double(k) + (b - 1.0)) / d);
      },
      policy);

  const double log_shift =
      double(n) * std::log(4.0) + double(2 * n - 2) * std::log(h_func(p));
  return shift_log(pe, log_shift);
}

ProductEval s_product(int n, const TruncationPolicy& policy) {
  check_dimension(n);
  if (n > 60) throw std::domain_error("s_product requires n <= 60 (exact binomials)");

  // Residual of k^(n-1)(k+n) against (k+1)^n:
  //   (k+1)^n - k^n - n k^(n-1) = sum_{i=2..n} C(n,i) k^(n-i),
  // so the log-term is log1p(-sum_i C(n,i) t^(n-i) / (k+1)^i) with t = k/(k+1).
  std::vector<double> coef;
  for (int i = 2; i <= n; ++i) coef.push_back(double(binomial(n, i)));

  return eval_log_product(
      [n, coef](std::int64_t k) {
        if (n == 1) return 0.0;
        const double kk = double(k);
        const double kp1 = kk + 1.0;
        const double t = kk / kp1;
        double x = std::pow(t, double(n - 2)) / (kp1 * kp1);
        double r = 0.0;
        for (double c : coef) {
          r += c * x;
          x /= kk;
        }
        return std::log1p(-r);
      },
      policy);
}

double sigma_n(int n, const TruncationPolicy& policy) {
  if (n < 2) throw std::domain_error("sigma_n requires n >= 2");
  if (n > 60) throw std::domain_error("sigma_n requires n <= 60 (exact binomials)");
  policy.validate();

  const std::int64_t K = std::min<std::int64_t>(policy.max_terms, 20000);
  constexpr int kTailTerms = 12;

  // sum_{k > K} k^(-s) by Euler-Maclaurin at x = K+1.
  const auto power_tail = [K](double s) {
    const double x = double(K) + 1.0;
    const double xs = std::pow(x, -s);
    return xs * (x / (s - 1.0) + 0.5 + s / (12.0 * x) -
                 s * (s + 1.0) * (s + 2.0) / (720.0 * x * x * x));
  };

  NeumaierSum sigma;
  for (int m = 2; m <= n; ++m) {
    NeumaierSum inner;
    for (std::int64_t k = 1; k <= K; ++k) {
      const double kk = double(k);
      const double kp1 = kk + 1.0;
      inner.add(std::pow(kk / kp1, double(n - m)) / std::pow(kp1, double(m)));
    }
    // Tail of sum k^(n-m)/(k+1)^n = sum k^(-m) (1+1/k)^(-n), expanded in 1/k.
    double tail = 0.0;
    double coeff = 1.0;  // C(n+j-1, j), built iteratively in double
    for (int j = 0; j <= kTailTerms; ++j) {
      if (j > 0) coeff *= double(n + j - 1) / double(j);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      tail += sign * coeff * power_tail(double(m + j));
    }
    sigma.add(double(binomial(n, m)) * (inner.total() + tail));
  }
  return sigma.total();
}

SigmaInequality sigma_inequality(int n, const TruncationPolicy& policy) {
  SigmaInequality out;
  out.sigma = sigma_n(n, policy);
  out.inv_factorial = std::exp(-log_factorial(n));
  out.exp_neg_sigma = std::exp(-out.sigma);
  out.holds = out.inv_factorial < out.exp_neg_sigma;
  return out;
}

}  // namespace pball
