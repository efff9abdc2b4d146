#include "pdsched/generators.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pdsched {

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  assert(hi >= lo);
  return lo + (hi - lo) * next_double();
}

int Rng::uniform_int(int lo, int hi) {
  assert(hi >= lo);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Instance gen_lower_bound(int n, double alpha, double value_scale) {
  if (n < 1) throw std::invalid_argument("need at least one job");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (!(value_scale > 0.0)) {
    throw std::invalid_argument("value scale must be positive");
  }
  Instance instance;
  instance.alpha = alpha;
  instance.machines = 1;

  // Job j carries (n-j+1)^(-1/alpha) of work in the shrinking window
  // [j-1, n): the finish-all optimum runs each job alone in its last unit
  // slot, while an online scheduler keeps repacking everything it already
  // accepted, which is what drives the ratio up with n.
  std::vector<double> work(n);
  double total_work = 0.0;
  for (int j = 1; j <= n; ++j) {
    work[j - 1] = std::pow(static_cast<double>(n - j + 1), -1.0 / alpha);
    total_work += work[j - 1];
  }
  // High enough that no reachable marginal price ever rejects a job.
  const double value = value_scale * (std::pow(total_work, alpha) + 1.0);
  for (int j = 1; j <= n; ++j) {
    instance.jobs.push_back({j - 1, static_cast<double>(j - 1),
                             static_cast<double>(n), work[j - 1], value});
  }
  return instance;
}

Instance gen_random(std::uint64_t seed, int n, int machines, double alpha,
                    const RandomRanges& ranges) {
  if (n < 1) throw std::invalid_argument("need at least one job");
  if (machines < 1) throw std::invalid_argument("machine count must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (!(ranges.release_max >= 0.0) || !(ranges.min_window > 0.0) ||
      ranges.max_window < ranges.min_window || !(ranges.min_work > 0.0) ||
      ranges.max_work < ranges.min_work || !(ranges.min_value > 0.0) ||
      ranges.max_value < ranges.min_value) {
    throw std::invalid_argument("malformed sampling ranges");
  }
  Rng rng(seed);
  Instance instance;
  instance.alpha = alpha;
  instance.machines = machines;
  for (int i = 0; i < n; ++i) {
    const double release = rng.uniform(0.0, ranges.release_max);
    const double window = rng.uniform(ranges.min_window, ranges.max_window);
    const double work = rng.uniform(ranges.min_work, ranges.max_work);
    const double value = rng.uniform(ranges.min_value, ranges.max_value);
    instance.jobs.push_back({i, release, release + window, work, value});
  }
  return instance;
}

}  // namespace pdsched
