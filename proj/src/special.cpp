#include "qlat/special.hpp"

#include <cmath>
#include <limits>

namespace qlat {
namespace {

constexpr double two_over_sqrt_pi = 1.1283791670955126;
constexpr double eps = std::numeric_limits<double>::epsilon();

cdouble erf_series(cdouble z) {
  const cdouble z2 = z * z;
  cdouble term = z;
  cdouble sum = z;
  for (int n = 1; n < 400; ++n) {
    term *= -z2 / double(n);
    const cdouble add = term / double(2 * n + 1);
    sum += add;
    if (std::abs(add) < 0.25 * eps * std::abs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

// Laplace continued fraction, valid for Re z > 0 away from the origin.
cdouble erfc_cf(cdouble z) {
  const double tiny = 1e-300;
  cdouble f = z;
  cdouble c = f;
  cdouble d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cdouble delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return std::exp(-z * z) / (std::sqrt(pi) * f);
}

}  // namespace

cdouble erfc(cdouble z) {
  if (z.real() < 0.0) return 2.0 - erfc(-z);
  if (z.real() >= 2.0 || (std::abs(z) >= 6.0 && z.real() > 0.5)) return erfc_cf(z);
  return 1.0 - erf_series(z);
}

double erfi(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 2000; ++n) {
    term *= x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 0.25 * eps * std::abs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

}  // namespace qlat
