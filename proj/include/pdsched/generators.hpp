#pragma once

#include <cstdint>
#include <random>

#include "pdsched/job.hpp"

namespace pdsched {

// Deterministic generator with explicitly pinned output: the same seed yields
// the same doubles on every platform (mt19937_64 words mapped through a fixed
// 53-bit scaling, no distribution objects).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
};

// The hard family for competitive-ratio experiments: n unit-value windows
// nested so that every job keeps the scheduler committed at full marginal
// price. Single processor; job values are scaled far above any reachable
// price so nothing gets rejected.
Instance gen_lower_bound(int n, double alpha, double value_scale = 1000.0);

struct RandomRanges {
  double release_max = 10.0;
  double min_window = 0.5;
  double max_window = 4.0;
  double min_work = 0.2;
  double max_work = 2.0;
  double min_value = 0.05;
  double max_value = 5.0;
};

Instance gen_random(std::uint64_t seed, int n, int machines, double alpha,
                    const RandomRanges& ranges = {});

}  // namespace pdsched
