#include "pdsched/chen_kernel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pdsched::chen {

namespace {

// Slots by descending load, ties by ascending id.
std::vector<int> descending_order(const IntervalLoads& loads) {
  std::vector<int> order(loads.work.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (loads.work[a] != loads.work[b]) return loads.work[a] > loads.work[b];
    return loads.tie_id(a) < loads.tie_id(b);
  });
  return order;
}

double checked_total(const IntervalLoads& loads) {
  assert(loads.machines >= 1);
  assert(loads.length > 0.0);
  assert(loads.ids.empty() || loads.ids.size() == loads.work.size());
  double total = 0.0;
  for (double w : loads.work) {
    assert(w >= 0.0);
    total += w;
  }
  return total;
}

// Pool speed a vanishing extra load would run at. Classifying with strict
// inequalities (and never dedicating the last machine) matches the schedule
// of loads + epsilon for every small epsilon > 0, so this is the one-sided
// limit rather than the 0/0 the closed form gives when all machines are
// dedicated.
double vanishing_load_speed(const IntervalLoads& loads) {
  const int m = loads.machines;
  std::vector<double> positive;
  positive.reserve(loads.work.size());
  double rest = 0.0;
  for (double w : loads.work) {
    if (w > 0.0) {
      positive.push_back(w);
      rest += w;
    }
  }
  std::sort(positive.begin(), positive.end(), std::greater<>());
  int d = 0;
  while (d < m - 1 && d < static_cast<int>(positive.size())) {
    const double top = positive[d];
    if (top * (m - d - 1) > rest - top) {
      rest -= top;
      ++d;
    } else {
      break;
    }
  }
  return rest / ((m - d) * loads.length);
}

}  // namespace

std::vector<int> dedicated_set(const IntervalLoads& loads) {
  double rest = checked_total(loads);
  const int m = loads.machines;
  const std::vector<int> order = descending_order(loads);
  std::vector<int> dedicated;
  for (int rank = 1; rank <= m && rank <= static_cast<int>(order.size());
       ++rank) {
    const double load = loads.work[order[rank - 1]];
    if (load <= 0.0) break;
    rest -= load;
    const bool keep = rank == m ? rest == 0.0 : load * (m - rank) >= rest;
    if (!keep) break;
    dedicated.push_back(order[rank - 1]);
  }
  return dedicated;
}

IntervalSchedule schedule_interval(const IntervalLoads& loads) {
  checked_total(loads);
  const int m = loads.machines;
  const double l = loads.length;

  IntervalSchedule out;
  out.processors.assign(m, {});
  out.dedicated = dedicated_set(loads);

  std::vector<char> is_dedicated(loads.work.size(), 0);
  for (int slot : out.dedicated) is_dedicated[slot] = 1;
  double pool_sum = 0.0;
  for (int slot : descending_order(loads)) {
    if (!is_dedicated[slot] && loads.work[slot] > 0.0) {
      out.pool.push_back(slot);
      pool_sum += loads.work[slot];
    }
  }

  for (std::size_t i = 0; i < out.dedicated.size(); ++i) {
    out.processors[i].push_back({out.dedicated[i], 0.0, l});
  }
  if (pool_sum <= 0.0) return out;

  const int d = static_cast<int>(out.dedicated.size());
  assert(d < m);
  out.pool_speed = pool_sum / ((m - d) * l);

  // Wrap-around packing: fill processors d..m-1 back to back. Every pool
  // load is strictly below pool_speed * l, so the two pieces of a wrapped
  // job never overlap in time.
  const double dust = 1e-15 * l;
  int p = d;
  double offset = 0.0;
  for (int slot : out.pool) {
    double duration = loads.work[slot] / out.pool_speed;
    while (duration > dust && p < m) {
      const double take = std::min(duration, l - offset);
      if (take > dust) {
        out.processors[p].push_back({slot, offset, offset + take});
      }
      duration -= take;
      offset += take;
      if (l - offset <= dust) {
        ++p;
        offset = 0.0;
      }
    }
  }
  return out;
}

double power(const IntervalLoads& loads, double alpha) {
  assert(alpha > 1.0);
  if (checked_total(loads) <= 0.0) return 0.0;
  const int m = loads.machines;
  const double l = loads.length;
  const std::vector<int> dedicated = dedicated_set(loads);
  std::vector<char> is_dedicated(loads.work.size(), 0);
  double energy = 0.0;
  for (int slot : dedicated) {
    is_dedicated[slot] = 1;
    energy += l * std::pow(loads.work[slot] / l, alpha);
  }
  double pool_sum = 0.0;
  for (std::size_t slot = 0; slot < loads.work.size(); ++slot) {
    if (!is_dedicated[slot]) pool_sum += loads.work[slot];
  }
  if (pool_sum > 0.0) {
    const int free = m - static_cast<int>(dedicated.size());
    energy += free * l * std::pow(pool_sum / (free * l), alpha);
  }
  return energy;
}

double speed_of(const IntervalLoads& loads, int slot) {
  checked_total(loads);
  assert(slot >= 0 && slot < static_cast<int>(loads.work.size()));
  if (loads.work[slot] <= 0.0) return vanishing_load_speed(loads);
  const std::vector<int> dedicated = dedicated_set(loads);
  for (int s : dedicated) {
    if (s == slot) return loads.work[slot] / loads.length;
  }
  std::vector<char> is_dedicated(loads.work.size(), 0);
  for (int s : dedicated) is_dedicated[s] = 1;
  double pool_sum = 0.0;
  for (std::size_t i = 0; i < loads.work.size(); ++i) {
    if (!is_dedicated[i]) pool_sum += loads.work[i];
  }
  const int free = loads.machines - static_cast<int>(dedicated.size());
  assert(free >= 1);
  return pool_sum / (free * loads.length);
}

double grad(const IntervalLoads& loads, int slot, double alpha,
            double job_work) {
  assert(job_work > 0.0);
  return job_work * alpha * std::pow(speed_of(loads, slot), alpha - 1.0);
}

std::vector<double> machine_loads(const IntervalLoads& loads) {
  checked_total(loads);
  const int m = loads.machines;
  const std::vector<int> dedicated = dedicated_set(loads);
  std::vector<char> is_dedicated(loads.work.size(), 0);
  std::vector<double> leveled;
  leveled.reserve(m);
  for (int slot : dedicated) {
    is_dedicated[slot] = 1;
    leveled.push_back(loads.work[slot]);
  }
  double pool_sum = 0.0;
  for (std::size_t i = 0; i < loads.work.size(); ++i) {
    if (!is_dedicated[i]) pool_sum += loads.work[i];
  }
  const int free = m - static_cast<int>(dedicated.size());
  for (int i = 0; i < free; ++i) leveled.push_back(pool_sum / free);
  return leveled;
}

double load_at_level(const IntervalLoads& fixed, double level_speed) {
  checked_total(fixed);
  if (level_speed < 0.0 || !std::isfinite(level_speed)) {
    throw std::invalid_argument("level speed must be finite and nonnegative");
  }
  if (level_speed == 0.0) return 0.0;
  // Loads running faster than the level stay dedicated; the rest shares the
  // remaining machines with the newcomer at exactly the level speed.
  const double cap = level_speed * fixed.length;
  int dedicated = 0;
  double rest = 0.0;
  for (double w : fixed.work) {
    if (w > cap) {
      ++dedicated;
    } else {
      rest += w;
    }
  }
  const double budget = cap * (fixed.machines - dedicated) - rest;
  if (budget <= 0.0) return 0.0;
  return std::min(budget, cap);
}

}  // namespace pdsched::chen
