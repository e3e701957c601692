#pragma once

#include <string>

#include "pball/product_engine.hpp"

// Closed-form infinite-product identities at p = 2. The published odd-index
// identity and the published ratio product fail numerically; both are kept
// here verbatim as testable objects, next to corrected variants that were
// derived from the even/odd closed form of M(n,2) and validated through two
// independent routes (gamma ratios and the product engine).

namespace pball {

enum class Verdict { verified, falsified, diverges };

const char* to_string(Verdict v);

struct IdentityReport {
  std::string identity_id;
  double lhs = 0.0;  // product-side value (partial value when diverging)
  double rhs = 0.0;  // closed-form side
  double abs_dev = 0.0;
  double rel_dev = 0.0;  // |lhs - rhs| / |lhs|
  double tolerance = 1e-7;
  Verdict verdict = Verdict::verified;
  TruncationPolicy policy;
};

// M(n,2) = 4 pi^n / (n^2 Gamma(n/2)^2), evaluated in log space. n >= 1.
double mn2_closed(int n);

// prod (2k+1)^(2m-2) (2k+2m) / (2k+2)^(2m-1)  vs  (4/pi)^(m-1) / m!
// (the even-dimension specialization; expected verified). m >= 1.
IdentityReport even_dim_product_check(int m, const TruncationPolicy& policy = {});

// The published odd-dimension identity,
//   prod (2k+1)^(2m-1) (2k+2m+3) / (2k+2)^(2m)  vs  (8/pi)^(m+1) / (2m+3)!!.
// The literal product does not converge (the linear coefficients of the
// factor polynomials mismatch), so the left side is evaluated through the
// gamma-function form its factor pattern determines. Expected falsified: the
// two sides differ by a uniform factor 4/pi. m >= 1.
IdentityReport odd_dim_product_check_printed(int m, const TruncationPolicy& policy = {});

// Corrected odd-dimension variant,
//   prod (2k+1)^(2m-1) (2k+2m+1) / (2k+2)^(2m)  vs  (8/pi)^m / (2m+1)!!,
// derived from the odd closed form of M(2m+1, 2). Expected verified. m >= 1.
IdentityReport odd_dim_product_check_corrected(int m, const TruncationPolicy& policy = {});

enum class RatioVariant { printed, corrected };

// prod (2k+2)(2k+2m) / ((2k+1)(2k+2m+c)) with c = 3 as published (expected
// divergent: the log-terms behave like -1/k) or c = 1 corrected (expected
// equal to pi (2m+1)!! / (2^(m+2) m!)). m >= 1.
IdentityReport ratio_product_check(int m, RatioVariant variant,
                                   const TruncationPolicy& policy = {});

}  // namespace pball
