#pragma once

#include <vector>

namespace pdsched::chen {

// Absolute work per job placed into one atomic interval, together with the
// interval length and the processor count. `ids` is the tie-break key for
// the descending-load order; when empty the entry index is used instead.
struct IntervalLoads {
  double length = 1.0;
  int machines = 1;
  std::vector<double> work;
  std::vector<int> ids;

  int tie_id(int slot) const { return ids.empty() ? slot : ids[slot]; }
};

// One contiguous execution window of a job on one processor; offsets are
// relative to the interval start.
struct Segment {
  int slot = -1;
  double begin = 0.0;
  double end = 0.0;
};

// The energy-minimal schedule of an interval: jobs whose load is large
// relative to the rest each occupy their own processor at speed load/length
// (dedicated); everything else shares the remaining processors at one
// common speed (the pool), packed wrap-around style.
struct IntervalSchedule {
  std::vector<int> dedicated;  // slots, by descending load
  std::vector<int> pool;       // slots with positive load, by descending load
  double pool_speed = 0.0;
  std::vector<std::vector<Segment>> processors;  // size == machines

  double dedicated_speed(const IntervalLoads& loads, int i) const {
    return loads.work[dedicated[i]] / loads.length;
  }
};

// Jobs that must run alone: scanning loads in descending order, a job is
// dedicated while its load is at least the average of the remaining loads
// over the remaining processors. Returns slots in that order. A job at
// rank == machines qualifies only when the remaining load is exactly zero.
std::vector<int> dedicated_set(const IntervalLoads& loads);

IntervalSchedule schedule_interval(const IntervalLoads& loads);

// Energy of the minimal schedule: sum of length * speed^alpha over busy
// processors, zero when all loads are zero.
double power(const IntervalLoads& loads, double alpha);

// Speed at which `slot` is processed in the minimal schedule (pool speed
// for zero-load entries). For a zero-load entry whose interval is fully
// dedicated the one-sided limit of the pool speed is returned, which keeps
// the derivative of power() continuous at that boundary.
double speed_of(const IntervalLoads& loads, int slot);

// d(power)/d(fraction) for `slot`, where the job's full workload is
// `job_work`: job_work * alpha * speed^(alpha-1).
double grad(const IntervalLoads& loads, int slot, double alpha,
            double job_work);

// Leveled per-processor workload, descending: the dedicated loads followed
// by one pool-average entry per pool processor.
std::vector<double> machine_loads(const IntervalLoads& loads);

// Smallest additional load for a new job such that its speed in the
// schedule of fixed-plus-new reaches `level_speed`; the inverse of
// speed_of along the new coordinate. Throws on a negative level.
double load_at_level(const IntervalLoads& fixed, double level_speed);

}  // namespace pdsched::chen
