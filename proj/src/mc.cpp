#include "dplab/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace dplab {

McEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  const int n = static_cast<int>(values.size());
  if (n < 2) {
    throw std::invalid_argument("summarize: need at least 2 replicates");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  return McEstimate{mean, sd / std::sqrt(static_cast<double>(n)), n, seed};
}

int max_threads() {
  if (const char* env = std::getenv("DP_LAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace detail {

void run_partitioned(int reps, const std::function<void(int)>& body) {
  if (reps <= 0) {
    throw std::invalid_argument("replicate_map: reps must be positive");
  }
  int threads = std::min(max_threads(), reps);
  if (threads <= 1) {
    for (int r = 0; r < reps; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int r = t; r < reps; r += threads) body(r);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

std::vector<double> replicate_map(const McSpec& spec,
                                  const std::function<double(RngStream&)>& fn) {
  return replicate_map_t<double>(spec, fn);
}

McEstimate estimate(const McSpec& spec, const std::function<double(RngStream&)>& fn) {
  return summarize(replicate_map(spec, fn), spec.seed);
}

}  // namespace dplab
