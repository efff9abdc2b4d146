#pragma once

#include <vector>

#include "pdsched/job.hpp"

namespace pdsched {

// Partition of the time horizon into atomic intervals [tau_{k-1}, tau_k)
// whose boundary set is exactly the releases and deadlines of the known
// jobs. Boundaries are compared exactly: values that are bit-equal in the
// input collapse to a single boundary, nothing is epsilon-merged.
class Timeline {
 public:
  Timeline() = default;

  // Throws std::invalid_argument on an empty job list.
  static Timeline build(const std::vector<Job>& jobs);

  int intervals() const {
    return bounds_.empty() ? 0 : static_cast<int>(bounds_.size()) - 1;
  }
  double start(int k) const { return bounds_[k]; }
  double end(int k) const { return bounds_[k + 1]; }
  double length(int k) const { return bounds_[k + 1] - bounds_[k]; }
  const std::vector<double>& boundaries() const { return bounds_; }

  // 1 iff [start(k), end(k)) is contained in [job.release, job.deadline).
  bool available(const Job& job, int k) const;

  // Inserts any boundaries of `job` that are still missing. Each interval
  // that gets split also splits the matching column of every row of `x`
  // in proportion to the sub-interval lengths, so row sums are preserved.
  // A no-op when both boundaries are already present.
  void refine(const Job& job, std::vector<std::vector<double>>& x);

 private:
  void insert_boundary(double t, std::vector<std::vector<double>>& x);

  std::vector<double> bounds_;
};

}  // namespace pdsched
