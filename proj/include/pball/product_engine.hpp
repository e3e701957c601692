#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

// Generic evaluator for convergent infinite products prod_{k>=1} f_k whose
// log-factors decay like O(1/k^2). Accumulation happens entirely in log
// space with compensated summation; the truncated tail is estimated from the
// observed decay and reported together with an error bracket.

namespace pball {

enum class TailMode { none, first_order, richardson };

struct TruncationPolicy {
  std::int64_t max_terms = 1'000'000;
  double rel_tol = 1e-9;
  TailMode tail_mode = TailMode::first_order;

  // Throws std::invalid_argument if max_terms < 16 or rel_tol not in (0, 1).
  void validate() const;
};

// Result of a truncated product evaluation. log_value is the best estimate
// of the full log-sum (partial sum plus tail estimate); the bracket bounds
// log_value including the tail uncertainty, so its width bounds the relative
// error of value.
struct ProductEval {
  double log_value = 0.0;
  double value = 1.0;
  std::int64_t terms_used = 0;
  double tail_estimate = 0.0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
  bool converged = false;

  double bracket_width() const { return bracket_upper - bracket_lower; }
};

// Raised when the decay diagnostics suggest the product does not converge
// (k^2 * term(k) keeps growing across the sampled window, or |term(k)| stops
// decreasing). The partial evaluation is carried along so callers can still
// report how the partial products behave.
class DivergenceSuspected : public std::runtime_error {
 public:
  DivergenceSuspected(const std::string& what, ProductEval partial)
      : std::runtime_error(what), partial_(partial) {}
  const ProductEval& partial() const { return partial_; }

 private:
  ProductEval partial_;
};

using LogTermFn = std::function<double(std::int64_t)>;

// Sums term(k) for k = 1, 2, ... with compensated accumulation, stopping once
// the error bracket is narrower than policy.rel_tol or max_terms is reached.
//
// Tail handling per mode:
//   first_order - fit k^2*term(k) ~ alpha + beta/k over the last decade of
//                 computed terms; tail = alpha*S2(K) + beta*S3(K) where S2,
//                 S3 are the exact power-sum tails. The bracket widens by the
//                 dispersion of the fit.
//   richardson  - extrapolate partial sums at the last three checkpoints
//                 assuming S_inf - S_K ~ alpha/K.
//   none        - tail = 0, crude bracket half-width 2*K*|term(K)|.
//
// The term evaluator must be pure: it is re-sampled at checkpoint times.
ProductEval eval_log_product(const LogTermFn& term, const TruncationPolicy& policy = {});

// Partial sum a*(x+a-1) * sum_{k=1..K} 1/((k-a)(k+x+a-1)) plus an
// integral-comparison bound on its tail. Because log t <= t-1 bounds the
// log of each product factor by that summand, the returned value is a
// certified upper bound for log P(x,a) when a*(x+a-1) >= 0; for a negative
// prefactor it is the conservative (lower) end of the series bound instead.
// Requires x > 0 and 0 <= a < 1.
double log_upper_bound_sum(double a, double x, std::int64_t K);

}  // namespace pball
