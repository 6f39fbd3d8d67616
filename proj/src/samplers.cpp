#include "dplab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "dplab/sampling.hpp"

namespace dplab {

namespace {

DiscreteMeasure assemble_sticks(const DirichletParams& params, RngStream& stream,
                                const std::vector<double>& weights, double residual,
                                RngStream& location_stream) {
  std::vector<WeightedAtom> merged;
  merged.reserve(weights.size());
  std::unordered_map<OriginId, std::size_t> index;
  for (double w : weights) {
    Location loc = params.base().sample(location_stream, stream);
    auto [it, inserted] = index.try_emplace(loc.origin_id, merged.size());
    if (inserted) {
      merged.push_back(WeightedAtom{loc, w});
    } else {
      merged[it->second].weight += w;
    }
  }
  return DiscreteMeasure(std::move(merged), residual);
}

}  // namespace

DiscreteMeasure stick_breaking(const DirichletParams& params, RngStream& stream,
                               double trunc_eps, std::int64_t max_sticks) {
  if (!(trunc_eps > 0.0) || !(trunc_eps < 1.0)) {
    throw std::invalid_argument("stick_breaking: trunc_eps must be in (0,1)");
  }
  RngStream weight_stream = stream.fork(1);
  RngStream location_stream = stream.fork(2);

  std::vector<double> weights;
  double remaining = 1.0;
  while (remaining >= trunc_eps) {
    if (static_cast<std::int64_t>(weights.size()) >= max_sticks) {
      throw std::runtime_error(
          "stick_breaking: stick cap " + std::to_string(max_sticks) +
          " reached before remaining mass fell below trunc_eps=" + std::to_string(trunc_eps) +
          " (k=" + std::to_string(params.k()) + ")");
    }
    double v = sample_beta(weight_stream, 1.0, params.k());
    double w = remaining * v;
    if (w > 0.0) weights.push_back(w);
    remaining *= (1.0 - v);
  }
  return assemble_sticks(params, stream, weights, remaining, location_stream);
}

DiscreteMeasure stick_breaking_fixed(const DirichletParams& params, RngStream& stream,
                                     std::int64_t n_sticks) {
  if (n_sticks < 1) {
    throw std::invalid_argument("stick_breaking_fixed: n_sticks must be >= 1");
  }
  RngStream weight_stream = stream.fork(1);
  RngStream location_stream = stream.fork(2);

  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(n_sticks));
  double remaining = 1.0;
  for (std::int64_t i = 0; i < n_sticks; ++i) {
    double v = sample_beta(weight_stream, 1.0, params.k());
    double w = remaining * v;
    if (w > 0.0) weights.push_back(w);
    remaining *= (1.0 - v);
  }
  return assemble_sticks(params, stream, weights, remaining, location_stream);
}

UrnState polya_urn(const DirichletParams& params, RngStream& stream, std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("polya_urn: n must be >= 1");
  }
  UrnState state{params, {}, {}};
  state.draws.reserve(static_cast<std::size_t>(n));
  const double k = params.k();
  for (std::int64_t m = 0; m < n; ++m) {
    double u = stream.uniform01();
    Location next;
    if (u < k / (k + static_cast<double>(m))) {
      next = params.base().sample(stream);
    } else {
      auto j = static_cast<std::size_t>(stream.uniform01() * static_cast<double>(m));
      j = std::min(j, state.draws.size() - 1);
      next = state.draws[j];
    }
    state.draws.push_back(next);
    state.counts[next.origin_id] += 1;
  }
  return state;
}

DirichletParams posterior_update(const DirichletParams& params,
                                 const std::vector<Location>& observations) {
  if (observations.empty()) return params;
  const double k = params.k();
  const auto n = static_cast<double>(observations.size());
  const double scale = k / (k + n);
  const double obs_mass = 1.0 / (k + n);

  double continuous_weight = scale * params.base().continuous_weight();
  std::vector<BaseAtom> atoms;
  atoms.reserve(params.base().atoms().size() + observations.size());
  std::unordered_map<OriginId, std::size_t> index;
  for (const BaseAtom& atom : params.base().atoms()) {
    index.emplace(atom.location.origin_id, atoms.size());
    atoms.push_back(BaseAtom{atom.location, scale * atom.mass});
  }
  for (const Location& obs : observations) {
    auto [it, inserted] = index.try_emplace(obs.origin_id, atoms.size());
    if (inserted) {
      atoms.push_back(BaseAtom{obs, obs_mass});
    } else {
      atoms[it->second].mass += obs_mass;
    }
  }
  BaseMeasure base(continuous_weight, params.base().continuous_dist(), std::move(atoms));
  return DirichletParams(k + n, std::move(base));
}

std::vector<double> finite_marginal(const DirichletParams& params,
                                    const std::vector<Interval>& partition, RngStream& stream) {
  if (partition.empty()) {
    throw std::invalid_argument("finite_marginal: partition must be nonempty");
  }
  for (const Interval& cell : partition) validate_interval(cell);

  std::vector<std::size_t> order(partition.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return partition[a].lo < partition[b].lo; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (partition[order[i]].lo < partition[order[i - 1]].hi) {
      throw std::invalid_argument("finite_marginal: partition cells overlap");
    }
  }

  std::vector<double> alphas(partition.size());
  double total = 0.0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    double mass = base_mass_of_set(params.base(), partition[i]);
    alphas[i] = params.k() * mass;
    total += mass;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("finite_marginal: partition does not cover the support (P0 mass " +
                                std::to_string(total) + ")");
  }
  return sample_dirichlet(stream, alphas);
}

}  // namespace dplab
