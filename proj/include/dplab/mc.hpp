#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dplab/rng.hpp"

namespace dplab {

/// Replication spec for a Monte Carlo estimate. Replicate r draws from
/// RngStream(seed, stream_offset + r); offsets keep concurrent estimators in
/// one run on disjoint streams.
struct McSpec {
  std::uint64_t seed = 0;
  int reps = 10000;
  std::uint64_t stream_offset = 0;
};

/// Monte Carlo result with seed provenance.
struct McEstimate {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(reps)
  int reps = 0;
  std::uint64_t seed = 0;
};

/// Mean and standard error of a replicate vector (fixed accumulation order,
/// so results do not depend on scheduling). Requires at least 2 values.
McEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

/// Thread cap for replicate-level parallelism: DP_LAB_THREADS if set, else
/// hardware concurrency.
int max_threads();

/// Runs fn once per replicate with that replicate's stream, in parallel up to
/// max_threads(). Slot r of the result belongs to replicate r regardless of
/// scheduling.
std::vector<double> replicate_map(const McSpec& spec,
                                  const std::function<double(RngStream&)>& fn);

/// Same, for estimators that carry a value plus auxiliary per-replicate data.
template <typename T>
std::vector<T> replicate_map_t(const McSpec& spec, const std::function<T(RngStream&)>& fn);

McEstimate estimate(const McSpec& spec, const std::function<double(RngStream&)>& fn);

namespace detail {
void run_partitioned(int reps, const std::function<void(int)>& body);
}

template <typename T>
std::vector<T> replicate_map_t(const McSpec& spec, const std::function<T(RngStream&)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(spec.reps));
  detail::run_partitioned(spec.reps, [&](int r) {
    RngStream stream(spec.seed, spec.stream_offset + static_cast<std::uint64_t>(r));
    out[static_cast<std::size_t>(r)] = fn(stream);
  });
  return out;
}

}  // namespace dplab
