#include "dplab/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dplab {

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_gamma: x must be > 0, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

double gamma_ratio(double a, double delta) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("gamma_ratio: a must be > 0, got " + std::to_string(a));
  }
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("gamma_ratio: delta must be >= 0, got " + std::to_string(delta));
  }
  return std::exp(log_gamma(a + delta) - log_gamma(a));
}

}  // namespace dplab
