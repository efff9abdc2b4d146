#pragma once

#include <vector>

#include "pdsched/job.hpp"
#include "pdsched/pd_online.hpp"
#include "pdsched/timeline.hpp"

namespace pdsched {

enum class JobCategory { finished, low_yield, high_yield };

// Closed-form evaluation of the dual lower bound induced by the frozen
// multipliers of a run. Per job j it reconstructs the speed s_hat_j the
// dual schedule would use, the intervals that job contributes to, and the
// energy of that (infeasible) schedule; g is the resulting bound on the
// optimal cost.
struct DualCertificate {
  std::vector<double> s_hat;           // per job
  std::vector<double> x_hat;           // fraction assigned by the dual schedule
  std::vector<double> energy;          // contrib_length * s_hat^alpha
  std::vector<double> contrib_length;  // total length of contributed intervals
  std::vector<std::vector<int>> contributing;  // per interval, job indices
  double g = 0.0;
  int tally_finished = 0;
  int tally_low_yield = 0;
  int tally_high_yield = 0;
};

// (lambda / (alpha * work))^(1/(alpha-1)).
double s_hat(double lambda, double work, double alpha);

// The min(machines, n_k) jobs available in interval k with the largest
// s_hat values (ties by id ascending); zero-speed jobs never contribute.
std::vector<int> contributing(const Instance& instance,
                              const Timeline& timeline, int k,
                              const std::vector<double>& s_hat_values);

// Evaluates the certificate. Throws std::invalid_argument when some
// lambda[j] exceeds the job's value and std::logic_error when the two
// algebraic routes to g disagree beyond rounding.
DualCertificate dual_value(const std::vector<double>& lambda,
                           const std::vector<signed char>& decided,
                           const Instance& instance, const Timeline& timeline);

double low_yield_threshold(double alpha);  // (alpha - alpha^(1-alpha))/(alpha-1)

JobCategory categorize(bool finished, double x_hat, double alpha);

// cost.total / g. Returns 1 for a zero-cost, zero-bound run; throws
// std::runtime_error when g <= 0 while the cost is positive.
double certified_ratio(const CostBreakdown& cost, const DualCertificate& cert,
                       double alpha);

double ratio_bound(double alpha);  // alpha^alpha

}  // namespace pdsched
