#include "icx/codes/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace icx::codes {

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double inverse_binary_entropy(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double window_delta(std::size_t s, std::size_t j) {
  if (j <= s) return 0.0;
  double arg = static_cast<double>(j - s) / static_cast<double>(j) - 1.0 / (4.0 * static_cast<double>(s));
  return inverse_binary_entropy(arg);
}

namespace {
std::size_t ceil_tol(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }
}  // namespace

std::size_t window_distance_target(std::size_t s, std::size_t b, std::size_t j) {
  std::size_t t = ceil_tol(window_delta(s, j) * static_cast<double>(j * b));
  if (j == 2 * s) t = std::max(t, ceil_tol(static_cast<double>(2 * s * b) / 15.0));
  return t;
}

}  // namespace icx::codes
