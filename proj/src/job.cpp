#include "pdsched/job.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace pdsched {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void Instance::validate() const {
  if (!std::isfinite(alpha) || alpha <= 1.0) {
    fail("alpha must be a finite number greater than 1");
  }
  if (machines < 1) fail("machine count must be positive");
  std::unordered_set<int> ids;
  for (const Job& job : jobs) {
    const std::string tag = "job " + std::to_string(job.id) + ": ";
    if (!ids.insert(job.id).second) fail(tag + "duplicate id");
    if (!std::isfinite(job.release) || !std::isfinite(job.deadline)) {
      fail(tag + "window bounds must be finite");
    }
    if (!(job.deadline > job.release)) {
      fail(tag + "deadline must be after release");
    }
    if (!std::isfinite(job.work) || !(job.work > 0.0)) {
      fail(tag + "workload must be positive");
    }
    if (!std::isfinite(job.value) || !(job.value > 0.0)) {
      fail(tag + "value must be positive");
    }
  }
}

std::vector<int> Instance::arrival_order() const {
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (jobs[a].release != jobs[b].release) {
      return jobs[a].release < jobs[b].release;
    }
    return jobs[a].id < jobs[b].id;
  });
  return order;
}

}  // namespace pdsched
