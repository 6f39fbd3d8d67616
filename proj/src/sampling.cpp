#include "dplab/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dplab {

double sample_gamma(RngStream& stream, double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("sample_gamma: shape must be > 0, got " + std::to_string(shape));
  }
  if (shape < 1.0) {
    double g = sample_gamma(stream, shape + 1.0);
    double u = stream.uniform01();
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia & Tsang squeeze method.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(RngStream& stream, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("sample_beta: shapes must be > 0");
  }
  double g1 = 0.0, g2 = 0.0;
  do {
    g1 = sample_gamma(stream, a);
    g2 = sample_gamma(stream, b);
  } while (g1 + g2 == 0.0);  // tiny-shape underflow of both draws
  double x = g1 / (g1 + g2);
  if (x <= 0.0) x = std::numeric_limits<double>::min();
  if (x >= 1.0) x = std::nextafter(1.0, 0.0);
  return x;
}

std::vector<double> sample_dirichlet(RngStream& stream, std::span<const double> alphas) {
  bool any_positive = false;
  for (double a : alphas) {
    if (!(a >= 0.0)) {
      throw std::invalid_argument("sample_dirichlet: alphas must be nonnegative");
    }
    if (a > 0.0) any_positive = true;
  }
  if (!any_positive) {
    throw std::invalid_argument("sample_dirichlet: at least one alpha must be positive");
  }
  std::vector<double> w(alphas.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] > 0.0) {
      w[i] = sample_gamma(stream, alphas[i]);
      total += w[i];
    }
  }
  if (total == 0.0) {
    throw std::runtime_error("sample_dirichlet: all gamma draws underflowed to zero");
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace dplab
