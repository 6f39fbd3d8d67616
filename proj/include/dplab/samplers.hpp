#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dplab/measure.hpp"
#include "dplab/rng.hpp"

namespace dplab {

/// Observed predictive sequence X_1..X_n with per-atom multiplicities.
struct UrnState {
  DirichletParams params;
  std::vector<Location> draws;
  std::map<OriginId, std::int64_t> counts;
};

inline constexpr std::int64_t kDefaultStickCap = 10'000'000;

/// Stick-breaking draw truncated when the remaining stick mass drops below
/// trunc_eps; the remaining mass becomes the residual. Weights come from
/// sequential Beta(1, k) fractions, locations are iid from the base measure,
/// and sticks landing on the same base atom are merged by origin_id.
///
/// Weight and location randomness run on substreams forked from `stream`, so
/// the weight sequence is independent of the base-measure choice and a rerun
/// with smaller trunc_eps extends the same draw.
DiscreteMeasure stick_breaking(const DirichletParams& params, RngStream& stream,
                               double trunc_eps, std::int64_t max_sticks = kDefaultStickCap);

/// Deterministic-size variant: exactly n_sticks sticks before merging,
/// residual = prod(1 - V_i).
DiscreteMeasure stick_breaking_fixed(const DirichletParams& params, RngStream& stream,
                                     std::int64_t n_sticks);

/// Sequential predictive sampling: X_{m+1} is a fresh base draw with
/// probability k/(k+m), otherwise a uniformly chosen previous draw repeated.
UrnState polya_urn(const DirichletParams& params, RngStream& stream, std::int64_t n);

/// Conjugate update: observing x_1..x_n moves (k, P0) to
/// (k + n, (k P0 + sum delta_{x_i}) / (k + n)), merging observation atoms into
/// the base by origin_id. Batch and sequential application agree field-wise.
DirichletParams posterior_update(const DirichletParams& params,
                                 const std::vector<Location>& observations);

/// One draw of (P(A_1),...,P(A_m)) ~ Dirichlet(k P0(A_1),...,k P0(A_m)) for a
/// disjoint partition covering the support (cell masses must sum to 1 within
/// 1e-9). Cells with P0(A_i) = 0 get weight exactly 0.
std::vector<double> finite_marginal(const DirichletParams& params,
                                    const std::vector<Interval>& partition, RngStream& stream);

}  // namespace dplab
