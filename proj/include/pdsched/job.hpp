#pragma once

#include <vector>

namespace pdsched {

// A preemptable job: it may run on any processor (one at a time) within
// [release, deadline) and is worth `value` if its full `work` is processed.
struct Job {
  int id = 0;
  double release = 0.0;
  double deadline = 0.0;
  double work = 0.0;
  double value = 0.0;

  double window_length() const { return deadline - release; }
};

// Energy exponent, processor count, and the job set. Arrival order is
// (release, id); `jobs` may be stored in any order.
struct Instance {
  double alpha = 2.0;
  int machines = 1;
  std::vector<Job> jobs;

  // Throws std::invalid_argument when a field violates its domain
  // (alpha <= 1, machines < 1, duplicate ids, release >= deadline,
  // nonpositive work or value).
  void validate() const;

  // Indices into `jobs`, sorted by (release, id).
  std::vector<int> arrival_order() const;
};

}  // namespace pdsched
