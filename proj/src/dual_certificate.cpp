#include "pdsched/dual_certificate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pdsched {

double s_hat(double lambda, double work, double alpha) {
  assert(work > 0.0 && alpha > 1.0);
  if (lambda <= 0.0) return 0.0;
  return std::pow(lambda / (alpha * work), 1.0 / (alpha - 1.0));
}

std::vector<int> contributing(const Instance& instance,
                              const Timeline& timeline, int k,
                              const std::vector<double>& s_hat_values) {
  assert(s_hat_values.size() == instance.jobs.size());
  std::vector<int> jobs;
  for (std::size_t i = 0; i < instance.jobs.size(); ++i) {
    if (s_hat_values[i] > 0.0 && timeline.available(instance.jobs[i], k)) {
      jobs.push_back(static_cast<int>(i));
    }
  }
  std::sort(jobs.begin(), jobs.end(), [&](int a, int b) {
    if (s_hat_values[a] != s_hat_values[b]) {
      return s_hat_values[a] > s_hat_values[b];
    }
    return instance.jobs[a].id < instance.jobs[b].id;
  });
  const std::size_t keep =
      std::min<std::size_t>(instance.machines, jobs.size());
  jobs.resize(keep);
  return jobs;
}

double low_yield_threshold(double alpha) {
  return (alpha - std::pow(alpha, 1.0 - alpha)) / (alpha - 1.0);
}

JobCategory categorize(bool finished, double x_hat, double alpha) {
  if (finished) return JobCategory::finished;
  return x_hat <= low_yield_threshold(alpha) ? JobCategory::low_yield
                                             : JobCategory::high_yield;
}

DualCertificate dual_value(const std::vector<double>& lambda,
                           const std::vector<signed char>& decided,
                           const Instance& instance,
                           const Timeline& timeline) {
  const int n = static_cast<int>(instance.jobs.size());
  if (static_cast<int>(lambda.size()) != n ||
      static_cast<int>(decided.size()) != n) {
    throw std::invalid_argument("multiplier/decision size mismatch");
  }
  for (int j = 0; j < n; ++j) {
    if (!(lambda[j] >= 0.0)) {
      throw std::invalid_argument("multipliers must be nonnegative");
    }
    if (lambda[j] > instance.jobs[j].value * (1.0 + 1e-12)) {
      throw std::invalid_argument("multiplier exceeds job value");
    }
    if (decided[j] != 0 && decided[j] != 1) {
      throw std::invalid_argument("undecided job in certificate input");
    }
  }

  DualCertificate cert;
  cert.s_hat.resize(n);
  cert.x_hat.assign(n, 0.0);
  cert.energy.assign(n, 0.0);
  cert.contrib_length.assign(n, 0.0);
  cert.contributing.resize(timeline.intervals());
  for (int j = 0; j < n; ++j) {
    cert.s_hat[j] = s_hat(lambda[j], instance.jobs[j].work, instance.alpha);
  }

  double by_interval = 0.0;
  for (int k = 0; k < timeline.intervals(); ++k) {
    cert.contributing[k] = contributing(instance, timeline, k, cert.s_hat);
    const double length = timeline.length(k);
    double speed_sum = 0.0;
    for (int j : cert.contributing[k]) {
      cert.contrib_length[j] += length;
      speed_sum += std::pow(cert.s_hat[j], instance.alpha);
    }
    by_interval += length * speed_sum;
  }

  double lambda_sum = 0.0;
  double energy_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    cert.energy[j] =
        cert.contrib_length[j] * std::pow(cert.s_hat[j], instance.alpha);
    cert.x_hat[j] =
        cert.contrib_length[j] * cert.s_hat[j] / instance.jobs[j].work;
    lambda_sum += lambda[j];
    energy_sum += cert.energy[j];
    // The dual schedule runs j at the speed whose marginal price is
    // lambda[j], so its energy must equal lambda[j] * x_hat[j] / alpha.
    const double cross = lambda[j] * cert.x_hat[j] / instance.alpha;
    if (std::abs(cert.energy[j] - cross) >
        1e-9 * std::max(1.0, cert.energy[j])) {
      throw std::logic_error("per-job dual energy identity violated");
    }
  }

  cert.g = lambda_sum + (1.0 - instance.alpha) * energy_sum;
  const double alt = lambda_sum + (1.0 - instance.alpha) * by_interval;
  if (std::abs(cert.g - alt) > 1e-9 * std::max(1.0, std::abs(cert.g))) {
    throw std::logic_error("per-job and per-interval dual sums disagree");
  }

  for (int j = 0; j < n; ++j) {
    switch (categorize(decided[j] == 1, cert.x_hat[j], instance.alpha)) {
      case JobCategory::finished:
        ++cert.tally_finished;
        break;
      case JobCategory::low_yield:
        ++cert.tally_low_yield;
        break;
      case JobCategory::high_yield:
        ++cert.tally_high_yield;
        break;
    }
  }
  return cert;
}

double certified_ratio(const CostBreakdown& cost, const DualCertificate& cert,
                       double alpha) {
  assert(alpha > 1.0);
  if (cost.total <= 0.0 && cert.g <= 0.0) return 1.0;
  if (!(cert.g > 0.0)) {
    throw std::runtime_error("dual bound is not positive");
  }
  return cost.total / cert.g;
}

double ratio_bound(double alpha) { return std::pow(alpha, alpha); }

}  // namespace pdsched
