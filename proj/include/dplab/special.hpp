#pragma once

namespace dplab {

/// ln Gamma(x) for x > 0. Relative error <= 1e-12 on [1e-6, 1e6].
double log_gamma(double x);

/// Gamma(a + delta) / Gamma(a) for a > 0, delta >= 0, evaluated in log space
/// so it stays finite for large arguments. gamma_ratio(a, 0) == 1 exactly.
double gamma_ratio(double a, double delta);

}  // namespace dplab
