#include "pdsched/offline_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdsched/chen_kernel.hpp"

namespace pdsched {

namespace {

// One job's decision variables: its fractions over the intervals it fits in.
struct Row {
  int job = 0;
  std::vector<int> intervals;
};

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& v) {
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumsum += u[i];
    const double candidate = (1.0 - cumsum) / static_cast<double>(i + 1);
    if (u[i] + candidate > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = candidate;
    }
  }
  assert(rho >= 1);
  for (double& value : v) value = std::max(value + theta, 0.0);
}

class EnergyModel {
 public:
  EnergyModel(const std::vector<int>& subset, const Instance& instance,
              const Timeline& timeline)
      : instance_(instance), timeline_(timeline) {
    for (int j : subset) {
      Row row;
      row.job = j;
      for (int k = 0; k < timeline.intervals(); ++k) {
        if (timeline.available(instance.jobs[j], k)) {
          row.intervals.push_back(k);
        }
      }
      if (row.intervals.empty()) {
        throw std::invalid_argument("job has no interval inside its window");
      }
      rows_.push_back(std::move(row));
    }
  }

  const std::vector<Row>& rows() const { return rows_; }

  // x is packed row by row, matching rows()/intervals() order.
  std::vector<double> uniform_start() const {
    std::vector<double> x;
    for (const Row& row : rows_) {
      double total = 0.0;
      for (int k : row.intervals) total += timeline_.length(k);
      for (int k : row.intervals) x.push_back(timeline_.length(k) / total);
    }
    return x;
  }

  double energy(const std::vector<double>& x) const {
    const auto by_interval = gather(x);
    double total = 0.0;
    for (const auto& loads : by_interval) {
      total += chen::power(loads, instance_.alpha);
    }
    return total;
  }

  // One Gauss-Seidel round of exact per-row minimization: each row is
  // releveled so its used intervals share one speed and every unused one
  // is costlier. Near the optimum measurable line-search descent drowns in
  // fp rounding, while this exact block step still lands on the level to
  // the last bit, so the fixed-point residual can actually reach the
  // requested tolerance.
  void relevel(std::vector<double>& x) const {
    std::vector<std::size_t> offsets(rows_.size());
    std::size_t at = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      offsets[r] = at;
      at += rows_[r].intervals.size();
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Job& job = instance_.jobs[rows_[r].job];
      std::vector<chen::IntervalLoads> fixed(rows_[r].intervals.size());
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        fixed[i].length = timeline_.length(rows_[r].intervals[i]);
        fixed[i].machines = instance_.machines;
      }
      for (std::size_t other = 0; other < rows_.size(); ++other) {
        if (other == r) continue;
        const double work = instance_.jobs[rows_[other].job].work;
        std::size_t pos = offsets[other];
        for (int k : rows_[other].intervals) {
          const double load = x[pos++] * work;
          if (load <= 0.0) continue;
          for (std::size_t i = 0; i < fixed.size(); ++i) {
            if (rows_[r].intervals[i] == k) {
              fixed[i].work.push_back(load);
              break;
            }
          }
        }
      }
      const auto placeable = [&](double speed) {
        double total = 0.0;
        for (const chen::IntervalLoads& f : fixed) {
          total += chen::load_at_level(f, speed);
        }
        return total;
      };
      double hi = 1.0;
      while (placeable(hi) < job.work && hi < 1e30) hi *= 2.0;
      double lo = 0.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (placeable(mid) >= job.work ? hi : lo) = mid;
      }
      double total = 0.0;
      std::vector<double> loads(fixed.size());
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        loads[i] = chen::load_at_level(fixed[i], hi);
        total += loads[i];
      }
      if (total <= 0.0) continue;
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        x[offsets[r] + i] = loads[i] / total;
      }
    }
  }

  std::vector<double> gradient(const std::vector<double>& x) const {
    const auto by_interval = gather(x);
    std::vector<double> g(x.size(), 0.0);
    std::size_t at = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double work = instance_.jobs[rows_[r].job].work;
      for (int k : rows_[r].intervals) {
        const chen::IntervalLoads& loads = by_interval[k];
        const int slot = slot_of_[r][k];
        if (slot >= 0) {
          g[at] = chen::grad(loads, slot, instance_.alpha, work);
        } else {
          // Zero entry: differentiate through an added empty slot so the
          // one-sided limit applies.
          chen::IntervalLoads padded = loads;
          padded.work.push_back(0.0);
          padded.ids.push_back(instance_.jobs[rows_[r].job].id);
          g[at] = chen::grad(padded,
                             static_cast<int>(padded.work.size()) - 1,
                             instance_.alpha, work);
        }
        ++at;
      }
    }
    return g;
  }

 private:
  std::vector<chen::IntervalLoads> gather(const std::vector<double>& x) const {
    std::vector<chen::IntervalLoads> by_interval(timeline_.intervals());
    for (int k = 0; k < timeline_.intervals(); ++k) {
      by_interval[k].length = timeline_.length(k);
      by_interval[k].machines = instance_.machines;
    }
    slot_of_.assign(rows_.size(),
                    std::vector<int>(timeline_.intervals(), -1));
    std::size_t at = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Job& job = instance_.jobs[rows_[r].job];
      for (int k : rows_[r].intervals) {
        const double load = x[at++] * job.work;
        if (load > 0.0) {
          slot_of_[r][k] = static_cast<int>(by_interval[k].work.size());
          by_interval[k].work.push_back(load);
          by_interval[k].ids.push_back(job.id);
        }
      }
    }
    return by_interval;
  }

  const Instance& instance_;
  const Timeline& timeline_;
  std::vector<Row> rows_;
  mutable std::vector<std::vector<int>> slot_of_;
};

// Projects a gradient step of size `step` row by row.
std::vector<double> project_step(const EnergyModel& model,
                                 const std::vector<double>& x,
                                 const std::vector<double>& g, double step) {
  std::vector<double> next(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] - step * g[i];
  std::size_t at = 0;
  for (const Row& row : model.rows()) {
    std::vector<double> piece(next.begin() + at,
                              next.begin() + at + row.intervals.size());
    project_simplex(piece);
    std::copy(piece.begin(), piece.end(), next.begin() + at);
    at += row.intervals.size();
  }
  return next;
}

double norm2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return std::sqrt(s);
}

}  // namespace

MinEnergyResult min_energy(const std::vector<int>& subset,
                           const Instance& instance, const Timeline& timeline,
                           const PgdOptions& options) {
  MinEnergyResult result;
  result.x.assign(instance.jobs.size(),
                  std::vector<double>(timeline.intervals(), 0.0));
  if (subset.empty()) return result;

  EnergyModel model(subset, instance, timeline);
  std::vector<double> x = model.uniform_start();
  double energy = model.energy(x);
  std::vector<double> grad = model.gradient(x);
  double step = 1.0;
  result.converged = false;

  long iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const std::vector<double> fixed_point = project_step(model, x, grad, 1.0);
    result.pg_norm = norm2(x, fixed_point);
    if (result.pg_norm <= options.tolerance * (1.0 + std::abs(energy))) {
      result.converged = true;
      break;
    }

    // Mix in exact releveling rounds while descending.
    if (iter % 8 == 7) {
      model.relevel(x);
      energy = model.energy(x);
      grad = model.gradient(x);
      continue;
    }

    step = std::min(step * 2.0, 1e8);
    bool moved = false;
    while (step > 1e-18) {
      const std::vector<double> trial = project_step(model, x, grad, step);
      const double trial_energy = model.energy(trial);
      double decrease = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        decrease += grad[i] * (x[i] - trial[i]);
      }
      if (trial_energy <= energy - options.armijo * decrease) {
        moved = norm2(x, trial) > 0.0;
        x = trial;
        energy = trial_energy;
        grad = model.gradient(x);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // measurable descent exhausted; hand off to releveling
  }

  // Releveling keeps contracting toward the joint fixed point even after
  // energy differences fall below rounding noise, because each row solve
  // compares load sums instead of energies. Iterate while the residual
  // still shrinks.
  if (!result.converged) {
    double best = result.pg_norm;
    int flat = 0;
    for (int round = 0; round < 2000 && iter < options.max_iterations;
         ++round, ++iter) {
      model.relevel(x);
      energy = model.energy(x);
      grad = model.gradient(x);
      const std::vector<double> fixed_point =
          project_step(model, x, grad, 1.0);
      result.pg_norm = norm2(x, fixed_point);
      if (result.pg_norm <= options.tolerance * (1.0 + std::abs(energy))) {
        result.converged = true;
        break;
      }
      if (result.pg_norm < best * 0.97) {
        best = result.pg_norm;
        flat = 0;
      } else if (++flat >= 40) {
        break;  // the contraction has bottomed out
      }
    }
  }
  result.iterations = iter;
  result.energy = energy;

  std::size_t at = 0;
  for (const Row& row : model.rows()) {
    for (int k : row.intervals) result.x[row.job][k] = x[at++];
  }
  return result;
}

OracleResult optimal_cost(const Instance& instance, int max_jobs,
                          const PgdOptions& options) {
  instance.validate();
  const int n = static_cast<int>(instance.jobs.size());
  if (n > max_jobs) {
    throw std::invalid_argument(
        "exhaustive oracle is limited to small instances");
  }
  OracleResult best;
  if (n == 0) return best;
  const Timeline timeline = Timeline::build(instance.jobs);

  std::vector<double> solo(n);
  for (int j = 0; j < n; ++j) {
    const Job& job = instance.jobs[j];
    solo[j] = std::pow(job.work, instance.alpha) /
              std::pow(job.window_length(), instance.alpha - 1.0);
  }

  double total_value = 0.0;
  for (const Job& job : instance.jobs) total_value += job.value;
  best.total = total_value;  // finish nothing

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double rejected = 0.0;
    double floor = 0.0;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        floor += solo[j];  // a job alone can do no better than this
      } else {
        rejected += instance.jobs[j].value;
      }
    }
    if (rejected + floor >= best.total) continue;

    std::vector<int> subset;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) subset.push_back(j);
    }
    const MinEnergyResult r = min_energy(subset, instance, timeline, options);
    best.total_iterations += r.iterations;
    best.worst_pg_norm = std::max(best.worst_pg_norm, r.pg_norm);
    best.converged = best.converged && r.converged;
    const double total = rejected + r.energy;
    if (total < best.total) {
      best.total = total;
      best.energy = r.energy;
      best.best_subset = subset;
    }
  }
  return best;
}

double yds_energy(const Instance& instance) {
  instance.validate();
  if (instance.machines != 1) {
    throw std::invalid_argument(
        "the peeling optimum is defined for one processor");
  }
  struct Piece {
    double release, deadline, work;
  };
  std::vector<Piece> pieces;
  pieces.reserve(instance.jobs.size());
  for (const Job& job : instance.jobs) {
    pieces.push_back({job.release, job.deadline, job.work});
  }

  double energy = 0.0;
  while (!pieces.empty()) {
    std::vector<double> releases, deadlines;
    for (const Piece& p : pieces) {
      releases.push_back(p.release);
      deadlines.push_back(p.deadline);
    }
    std::sort(releases.begin(), releases.end());
    releases.erase(std::unique(releases.begin(), releases.end()),
                   releases.end());
    std::sort(deadlines.begin(), deadlines.end());
    deadlines.erase(std::unique(deadlines.begin(), deadlines.end()),
                    deadlines.end());

    double best_density = -1.0;
    double t1 = 0.0, t2 = 0.0;
    for (double a : releases) {
      for (double b : deadlines) {
        if (b <= a) continue;
        double work = 0.0;
        for (const Piece& p : pieces) {
          if (p.release >= a && p.deadline <= b) work += p.work;
        }
        if (work <= 0.0) continue;
        const double density = work / (b - a);
        if (density > best_density) {
          best_density = density;
          t1 = a;
          t2 = b;
        }
      }
    }
    assert(best_density > 0.0);
    energy += (t2 - t1) * std::pow(best_density, instance.alpha);

    const double shift = t2 - t1;
    std::vector<Piece> remaining;
    for (const Piece& p : pieces) {
      if (p.release >= t1 && p.deadline <= t2) continue;  // scheduled
      const auto compress = [&](double t) {
        if (t <= t1) return t;
        if (t <= t2) return t1;
        return t - shift;
      };
      remaining.push_back({compress(p.release), compress(p.deadline), p.work});
      assert(remaining.back().deadline > remaining.back().release);
    }
    pieces = std::move(remaining);
  }
  return energy;
}

}  // namespace pdsched
