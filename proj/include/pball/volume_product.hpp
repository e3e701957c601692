#pragma once

#include "pball/identities.hpp"
#include "pball/product_engine.hpp"

// Volumes of unit p-balls and their volume product M(n,p) = |B_p^n| |B_q^n|,
// computed along two independent routes: the gamma-function form (the
// reference) and a gamma-free infinite-product form evaluated through the
// product engine. Also the p -> 1 limit objects s_n and sigma_n.
//
// Everything is pure; grid scans may call these concurrently.

namespace pball {

// Conjugate exponents, 1/p + 1/q = 1, with the conventions 1 <-> infinity.
// p = infinity is represented by the IEEE infinity.
struct HolderPair {
  double p;
  double q;
};

// Throws std::domain_error for p < 1 or NaN.
HolderPair holder_conjugate(double p);

struct BallSpec {
  int n;             // dimension, n >= 1
  HolderPair pair;
};

// ln |B_p^n| with |B_p^n| = 2^n Gamma(1+1/p)^n / Gamma(1+n/p). The gamma
// formula is applied for every finite p >= 1 (at p = 1 it gives the
// cross-polytope volume 2^n/n!); p = infinity gives the cube, 2^n.
double log_ball_volume(const BallSpec& spec);

// exp(log_ball_volume); throws std::overflow_error if the value exceeds the
// binary64 range (the log form is always available).
double ball_volume(const BallSpec& spec);

// Reference evaluation of M(n,p) = 4^n [G(1+1/p)G(1+1/q)]^n / (G(1+n/p)G(1+n/q)),
// fully in log space. Valid for p in [1, infinity].
double log_mprod_gamma(int n, double p);
double mprod_gamma(int n, double p);

// h(p) = pi / (p q sin(pi/p)) = Gamma(1+1/p) Gamma(1+1/q). The removable
// singularities at p = 1 and p = infinity return the limit value 1; near
// p = 1 the sine is evaluated as sin(pi (p-1)/p) to avoid cancellation.
double h_func(double p);

// P(x,a) = prod k(k+x-1) / ((k-a)(k+x+a-1)) for x > 0, 0 <= a < 1, with the
// log-term computed as log1p(a(x+a-1) / ((k-a)(k+x+a-1))).
ProductEval p_product(double x, double a, const TruncationPolicy& policy = {});

// The gamma side of the same identity: Gamma(1-a) Gamma(x+a) / Gamma(x).
// This is the designated oracle for p_product.
double p_gamma_side(double x, double a);

// Gamma(n/p) assembled from n-1 evaluations of P((n-m)/p, 1/p) times the
// gamma prefactor Gamma(1/p) / Gamma(1/q)^(n-1). Requires n >= 2, finite
// p > 1. Exists to test the factorization against log_gamma(n/p).
double gamma_np_factorized(int n, double p, const TruncationPolicy& policy = {});

// Pairing identity for P((n-m)/p, 1/p) * P((n-m)/q, 1/q): the left side is
// evaluated as two p_product calls, the right side as
//   pq ((n-m)/(n+1-m))^2 prod (k+1)^2/g_k * r_k(n-m)/r_k(n+1-m)
// with r_k(j) = k^2 + jk + j^2/(pq) and g_k = r_k(1). (The published form
// carries a 1/(pq) prefactor, which is off by (pq)^2; the derivation and the
// p = 2 closed form both give pq.) Requires n >= 2, 1 <= m <= n-1, finite
// p > 1. Default tolerance 1e-6.
IdentityReport pair_product_check(int n, int m, double p,
                                  const TruncationPolicy& policy = {},
                                  double tolerance = 1e-6);

// The gamma-free route for M(n,p): 4^n h(p)^(2n-2) times the engine-evaluated
// product of (k^2+k+1/pq)^(n-2) (k^2+nk+n^2/pq) / (k+1)^(2n-2). Each
// quadratic is paired against one copy of (k+1)^2 before taking logs so the
// floating-point per-term size matches the algebraic O(1/k^2) decay.
// For n = 1 the factors cancel identically and the result is exactly 4.
// At the boundary exponents p = 1 and p = infinity, where h and 1/(pq) are
// indeterminate, the limit value 4^n s_n is returned via s_product instead.
ProductEval mprod_product(int n, double p, const TruncationPolicy& policy = {});

// s_n = prod k^(n-1)(k+n) / (k+1)^n (the p -> 1 limit of the product above,
// equal to 1/n!). Log-term computed as log1p of the exact residual.
ProductEval s_product(int n, const TruncationPolicy& policy = {});

// sigma_n = sum_{m=2..n} C(n,m) sum_{k>=1} k^(n-m) / (k+1)^n. The inner sums
// are truncated with series-expanded integral tails; the result is accurate
// to ~1e-15 absolute. Requires 2 <= n <= 60 (exact binomials).
double sigma_n(int n, const TruncationPolicy& policy = {});

// The inequality 1/n! < exp(-sigma_n) implied by the crude logarithmic bound
// on s_n.
struct SigmaInequality {
  double sigma;
  double inv_factorial;
  double exp_neg_sigma;
  bool holds;
};
SigmaInequality sigma_inequality(int n, const TruncationPolicy& policy = {});

}  // namespace pball
