#include "pdsched/timeline.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pdsched {

Timeline Timeline::build(const std::vector<Job>& jobs) {
  if (jobs.empty()) {
    throw std::invalid_argument("cannot build a timeline from zero jobs");
  }
  Timeline timeline;
  timeline.bounds_.reserve(2 * jobs.size());
  for (const Job& job : jobs) {
    timeline.bounds_.push_back(job.release);
    timeline.bounds_.push_back(job.deadline);
  }
  std::sort(timeline.bounds_.begin(), timeline.bounds_.end());
  timeline.bounds_.erase(
      std::unique(timeline.bounds_.begin(), timeline.bounds_.end()),
      timeline.bounds_.end());
  return timeline;
}

bool Timeline::available(const Job& job, int k) const {
  return bounds_[k] >= job.release && bounds_[k + 1] <= job.deadline;
}

void Timeline::refine(const Job& job, std::vector<std::vector<double>>& x) {
  insert_boundary(job.release, x);
  insert_boundary(job.deadline, x);
}

void Timeline::insert_boundary(double t, std::vector<std::vector<double>>& x) {
  // Invariant: every row of x has exactly intervals() entries.
  if (bounds_.empty()) {
    bounds_.push_back(t);
    return;
  }
  auto it = std::lower_bound(bounds_.begin(), bounds_.end(), t);
  if (it != bounds_.end() && *it == t) return;
  if (it == bounds_.end()) {
    bounds_.push_back(t);
    for (auto& row : x) row.push_back(0.0);
    return;
  }
  if (it == bounds_.begin()) {
    bounds_.insert(it, t);
    for (auto& row : x) row.insert(row.begin(), 0.0);
    return;
  }
  const int k = static_cast<int>(it - bounds_.begin()) - 1;
  const double lo = bounds_[k];
  const double hi = bounds_[k + 1];
  assert(lo < t && t < hi);
  const double left_share = (t - lo) / (hi - lo);
  bounds_.insert(it, t);
  for (auto& row : x) {
    assert(static_cast<int>(row.size()) == intervals() - 1);
    const double whole = row[k];
    row[k] = whole * left_share;
    row.insert(row.begin() + k + 1, whole - row[k]);
  }
}

}  // namespace pdsched
