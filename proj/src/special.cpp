#include "pball/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pball/compensated.hpp"

namespace pball {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x))
    throw std::domain_error(std::string(name) + " must be finite");
}

}  // namespace

double log_gamma(double x) {
  require_finite(x, "x");
  if (x <= 0.0) throw std::domain_error("log_gamma requires x > 0");

  // Lanczos rational approximation with shift 671/128 (Press et al. variant).
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};

  double y = x;
  double tmp = x + 5.24218750000000000;  // x + 671/128
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double pochhammer_log(double z, std::int64_t k) {
  require_finite(z, "z");
  if (z <= 0.0) throw std::domain_error("pochhammer_log requires z > 0");
  if (k < 0) throw std::domain_error("pochhammer_log requires k >= 0");

  NeumaierSum acc;
  for (std::int64_t j = 0; j < k; ++j) acc.add(std::log(z + double(j)));
  return acc.total();
}

double gamma_limit(double z, std::int64_t K) {
  require_finite(z, "z");
  if (z <= 0.0) throw std::domain_error("gamma_limit requires z > 0");
  if (K < 1) throw std::domain_error("gamma_limit requires K >= 1");

  // ln[K! / (z)_K] = -sum_{j=1..K} ln(1 + (z-1)/j); the log1p form keeps the
  // summand accurate for large j where z+j-1 and j nearly coincide.
  NeumaierSum acc;
  for (std::int64_t j = 1; j <= K; ++j) acc.add(std::log1p((z - 1.0) / double(j)));
  return std::exp((z - 1.0) * std::log(double(K)) - acc.total());
}

std::uint64_t double_factorial(int n) {
  if (n < 0) throw std::domain_error("double_factorial requires n >= 0");
  if (n > 33) throw std::domain_error("double_factorial overflows 64 bits for n > 33");
  std::uint64_t r = 1;
  for (int m = n; m > 1; m -= 2) r *= std::uint64_t(m);
  return r;
}

double log_double_factorial(int n) {
  if (n < 0) throw std::domain_error("log_double_factorial requires n >= 0");
  NeumaierSum acc;
  for (int m = n; m > 1; m -= 2) acc.add(std::log(double(m)));
  return acc.total();
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial requires n >= 0");
  return pochhammer_log(1.0, n);
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial requires 0 <= k <= n");
  if (n > 62) throw std::domain_error("binomial overflows 64 bits for n > 62");
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) stays below 2^64 for n <= 62, and is divisible by i.
    r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  }
  return r;
}

}  // namespace pball
