#pragma once

#include <functional>
#include <vector>

#include "pdsched/chen_kernel.hpp"
#include "pdsched/job.hpp"
#include "pdsched/timeline.hpp"

namespace pdsched {

struct CostBreakdown {
  double energy = 0.0;
  double lost_value = 0.0;
  double total = 0.0;
};

// Primal and dual state of the online algorithm. Rows follow the order of
// Instance::jobs; x[j][k] is the fraction of job j placed in interval k.
struct WorkAssignment {
  std::vector<std::vector<double>> x;
  std::vector<signed char> decided;  // -1 pending, 0 rejected, 1 finished
  std::vector<double> lambda;        // marginal level frozen at decision time
  double delta = 1.0;

  bool finished(int j) const { return decided[j] == 1; }
};

enum class Partition {
  online,   // boundaries appear as jobs arrive, loads split proportionally
  apriori,  // full boundary set built up front
};

struct RunReport {
  Timeline timeline;
  WorkAssignment assignment;
  std::vector<chen::IntervalSchedule> schedules;  // one per interval
  CostBreakdown cost;
  double delta = 0.0;
};

// The analyzed choice alpha^(1-alpha).
double default_delta(double alpha);

// Speed equivalent of marginal level `lambda` for a job of workload `work`:
// the inverse of lambda = delta * work * alpha * s^(alpha-1).
double level_speed(double lambda, double delta, double alpha, double work);

// Loads finished jobs place into interval k (rows with decided == 1 and a
// positive entry), optionally excluding row `skip`.
chen::IntervalLoads collect_loads(const Instance& instance,
                                  const Timeline& timeline,
                                  const WorkAssignment& assignment, int k,
                                  int skip = -1);

// Runs the arrival-by-arrival waterfill. Construct, then call step() once
// per job in arrival order, or use run() below for the whole pipeline.
class PdScheduler {
 public:
  PdScheduler(const Instance& instance, double delta,
              Partition mode = Partition::online);

  // Total fraction of job `j` (instance index) placed across its available
  // intervals when its marginal level is `lambda`; continuous and
  // nondecreasing in lambda.
  double level_sum(int j, double lambda) const;

  // Inserts j's boundaries (online mode) and waterfills it: the smallest
  // common level at which the job fits is found by bisection; if that
  // level exceeds the job's value the tentative work is dropped and the
  // job rejected. Decided jobs are never touched again.
  void step(int j);

  // Instance indices sorted by (release, id).
  const std::vector<int>& order() const { return order_; }

  const Instance& instance() const { return instance_; }
  const Timeline& timeline() const { return timeline_; }
  const WorkAssignment& assignment() const { return state_; }

  // Loads committed to interval k by decided jobs, excluding row `skip`.
  chen::IntervalLoads interval_loads(int k, int skip = -1) const;

  // Marginal cost level of job j in interval k at the current state
  // (includes j's own committed load).
  double marginal(int j, int k) const;

  RunReport finish() const;

 private:
  void waterfill(int j);

  const Instance& instance_;
  std::vector<int> order_;
  Timeline timeline_;
  WorkAssignment state_;
  Partition mode_;
};

// Scheduling cost of the final assignment: minimal energy per interval
// plus the values of rejected jobs.
CostBreakdown compute_cost(const Instance& instance, const Timeline& timeline,
                           const WorkAssignment& assignment);

using ArrivalObserver = std::function<void(const PdScheduler&, int job)>;

// Full run over the instance. Throws std::invalid_argument unless
// delta is in (0, 1]. `after_arrival` (when set) is called after each
// job's decision with the scheduler state and the job's instance index.
RunReport run(const Instance& instance, double delta,
              Partition mode = Partition::online,
              const ArrivalObserver& after_arrival = {});

}  // namespace pdsched
