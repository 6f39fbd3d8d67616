#pragma once

#include <span>
#include <vector>

#include "dplab/rng.hpp"

namespace dplab {

/// Gamma(shape, 1) draw. Marsaglia-Tsang for shape >= 1; shapes below 1 use
/// the boost identity G(shape) = G(shape+1) * U^(1/shape), which stays
/// correct where rejection samplers degrade.
double sample_gamma(RngStream& stream, double shape);

/// Beta(a, b) draw via two Gamma draws, strictly inside (0,1).
double sample_beta(RngStream& stream, double a, double b);

/// Dirichlet draw. Alphas must be nonnegative with at least one positive;
/// components with alpha exactly 0 come back exactly 0 and consume no
/// randomness. Result sums to 1 within 1e-12.
std::vector<double> sample_dirichlet(RngStream& stream, std::span<const double> alphas);

}  // namespace dplab
