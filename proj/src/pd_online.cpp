#include "pdsched/pd_online.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pdsched {

double default_delta(double alpha) { return std::pow(alpha, 1.0 - alpha); }

double level_speed(double lambda, double delta, double alpha, double work) {
  assert(lambda >= 0.0 && delta > 0.0 && alpha > 1.0 && work > 0.0);
  if (lambda <= 0.0) return 0.0;
  return std::pow(lambda / (delta * alpha * work), 1.0 / (alpha - 1.0));
}

chen::IntervalLoads collect_loads(const Instance& instance,
                                  const Timeline& timeline,
                                  const WorkAssignment& assignment, int k,
                                  int skip) {
  chen::IntervalLoads loads;
  loads.length = timeline.length(k);
  loads.machines = instance.machines;
  const int n = static_cast<int>(instance.jobs.size());
  for (int i = 0; i < n; ++i) {
    if (i == skip || assignment.decided[i] != 1) continue;
    const double load = assignment.x[i][k] * instance.jobs[i].work;
    if (load > 0.0) {
      loads.work.push_back(load);
      loads.ids.push_back(instance.jobs[i].id);
    }
  }
  return loads;
}

PdScheduler::PdScheduler(const Instance& instance, double delta,
                         Partition mode)
    : instance_(instance), mode_(mode) {
  instance.validate();
  if (instance.jobs.empty()) {
    throw std::invalid_argument("nothing to schedule: no jobs");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
  order_ = instance.arrival_order();
  const int n = static_cast<int>(instance.jobs.size());
  state_.delta = delta;
  state_.decided.assign(n, -1);
  state_.lambda.assign(n, 0.0);
  state_.x.assign(n, {});
  if (mode_ == Partition::apriori) {
    timeline_ = Timeline::build(instance.jobs);
    for (auto& row : state_.x) row.assign(timeline_.intervals(), 0.0);
  }
}

chen::IntervalLoads PdScheduler::interval_loads(int k, int skip) const {
  return collect_loads(instance_, timeline_, state_, k, skip);
}

double PdScheduler::level_sum(int j, double lambda) const {
  const Job& job = instance_.jobs[j];
  const double target =
      level_speed(lambda, state_.delta, instance_.alpha, job.work);
  double sum = 0.0;
  for (int k = 0; k < timeline_.intervals(); ++k) {
    if (!timeline_.available(job, k)) continue;
    sum += chen::load_at_level(interval_loads(k, j), target);
  }
  return sum / job.work;
}

double PdScheduler::marginal(int j, int k) const {
  chen::IntervalLoads loads = interval_loads(k, j);
  loads.work.push_back(state_.x[j].empty()
                           ? 0.0
                           : state_.x[j][k] * instance_.jobs[j].work);
  loads.ids.push_back(instance_.jobs[j].id);
  const int slot = static_cast<int>(loads.work.size()) - 1;
  return state_.delta *
         chen::grad(loads, slot, instance_.alpha, instance_.jobs[j].work);
}

void PdScheduler::step(int j) {
  assert(j >= 0 && j < static_cast<int>(instance_.jobs.size()));
  assert(state_.decided[j] == -1);
  if (mode_ == Partition::online) {
    timeline_.refine(instance_.jobs[j], state_.x);
  }
  waterfill(j);
}

void PdScheduler::waterfill(int j) {
  const Job& job = instance_.jobs[j];
  const double alpha = instance_.alpha;
  const double delta = state_.delta;

  // A job is worth finishing only if it fits at a level not above its value.
  if (level_sum(j, job.value) < 1.0) {
    state_.decided[j] = 0;
    state_.lambda[j] = job.value;
    return;
  }

  std::vector<int> avail;
  double avail_length = 0.0;
  double packed = job.work;
  for (int k = 0; k < timeline_.intervals(); ++k) {
    if (!timeline_.available(job, k)) continue;
    avail.push_back(k);
    avail_length += timeline_.length(k);
    const chen::IntervalLoads loads = interval_loads(k, j);
    for (double w : loads.work) packed += w;
  }
  assert(!avail.empty() && avail_length > 0.0);

  // Bracket the smallest level at which the whole job fits, then bisect.
  // The seed is the level of a uniform spread of everything in the window.
  const double seed =
      delta * alpha * job.work *
      std::pow(packed / (instance_.machines * avail_length), alpha - 1.0);
  double hi = std::min(job.value, std::max(seed, 1e-9));
  while (hi < job.value && level_sum(j, hi) < 1.0) {
    hi = std::min(job.value, 2.0 * hi);
  }
  double lo = 0.0;
  double sum_hi = level_sum(j, hi);
  assert(sum_hi >= 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= 1e-12 * std::max(1.0, hi) && sum_hi - 1.0 <= 1e-12) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double sum_mid = level_sum(j, mid);
    if (sum_mid >= 1.0) {
      hi = mid;
      sum_hi = sum_mid;
    } else {
      lo = mid;
    }
  }

  // Commit the loads the final level prescribes, normalized so the row sums
  // to one (the bisection leaves at most ~1e-12 slack to distribute).
  const double target = level_speed(hi, delta, alpha, job.work);
  std::vector<double> loads(avail.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < avail.size(); ++i) {
    loads[i] = chen::load_at_level(interval_loads(avail[i], j), target);
    total += loads[i];
  }
  assert(total >= job.work * (1.0 - 1e-9));
  for (std::size_t i = 0; i < avail.size(); ++i) {
    state_.x[j][avail[i]] = loads[i] / total;
  }
  state_.decided[j] = 1;
  state_.lambda[j] = hi;
}

RunReport PdScheduler::finish() const {
  RunReport report;
  report.timeline = timeline_;
  report.assignment = state_;
  report.delta = state_.delta;
  report.schedules.reserve(timeline_.intervals());
  for (int k = 0; k < timeline_.intervals(); ++k) {
    report.schedules.push_back(chen::schedule_interval(interval_loads(k)));
  }
  report.cost = compute_cost(instance_, timeline_, state_);
  return report;
}

CostBreakdown compute_cost(const Instance& instance, const Timeline& timeline,
                           const WorkAssignment& assignment) {
  CostBreakdown cost;
  for (int k = 0; k < timeline.intervals(); ++k) {
    cost.energy += chen::power(collect_loads(instance, timeline, assignment, k),
                               instance.alpha);
  }
  for (std::size_t i = 0; i < instance.jobs.size(); ++i) {
    if (assignment.decided[i] == 0) cost.lost_value += instance.jobs[i].value;
  }
  cost.total = cost.energy + cost.lost_value;
  return cost;
}

RunReport run(const Instance& instance, double delta, Partition mode,
              const ArrivalObserver& after_arrival) {
  PdScheduler scheduler(instance, delta, mode);
  for (int j : scheduler.order()) {
    scheduler.step(j);
    if (after_arrival) after_arrival(scheduler, j);
  }
  return scheduler.finish();
}

}  // namespace pdsched
