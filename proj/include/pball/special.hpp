#pragma once

#include <cstdint>

// Real-valued special functions: log-gamma, the classical limit definition of
// the gamma function, shifted and double factorials. These are the building
// blocks and the independent oracles for everything else in the library.
//
// All functions are pure and safe to call concurrently. Non-finite inputs are
// rejected with std::domain_error unless stated otherwise.

namespace pball {

// ln Gamma(x) for x > 0.
//
// Lanczos-type rational approximation (14 coefficients, shift 671/128), good
// to a few units in the last place of Gamma across (0, 1e3]. Throws
// std::domain_error for x <= 0 or non-finite x.
double log_gamma(double x);

// ln (z)_k where (z)_k = z(z+1)...(z+k-1) is the shifted factorial.
// (z)_0 = 1. Computed by compensated summation of ln(z+j). Requires z > 0
// (every factor positive) and k >= 0.
double pochhammer_log(double z, std::int64_t k);

// K-th element of the classical limit sequence K^(z-1) K! / (z)_K, which
// tends to Gamma(z) like O(1/K). Deliberately returns the raw sequence value
// with no acceleration: this is the "dumb" oracle against log_gamma.
// Requires z > 0, K >= 1.
double gamma_limit(double z, std::int64_t K);

// n!! = n(n-2)(n-4)..., with 0!! = 1!! = 1. Exact; requires 0 <= n <= 33
// (34!! overflows 64 bits). Use log_double_factorial beyond that.
std::uint64_t double_factorial(int n);

// ln n!! for any n >= 0.
double log_double_factorial(int n);

// ln n! for any n >= 0.
double log_factorial(int n);

// Binomial coefficient C(n, k), exact in 64 bits for n <= 62.
std::uint64_t binomial(int n, int k);

}  // namespace pball
