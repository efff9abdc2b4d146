#pragma once

#include <vector>

#include "pdsched/job.hpp"
#include "pdsched/timeline.hpp"

namespace pdsched {

struct PgdOptions {
  long max_iterations = 100000;
  double armijo = 1e-4;
  // stop when the gradient-mapping norm drops below tol*(1+|energy|)
  double tolerance = 1e-8;
};

struct MinEnergyResult {
  double energy = 0.0;
  std::vector<std::vector<double>> x;  // rows follow instance order
  long iterations = 0;
  double pg_norm = 0.0;
  bool converged = true;
};

struct OracleResult {
  std::vector<int> best_subset;  // instance indices, ascending
  double energy = 0.0;
  double total = 0.0;  // energy + values of jobs outside the subset
  long total_iterations = 0;
  double worst_pg_norm = 0.0;
  bool converged = true;
};

// Minimal energy that finishes exactly the given subset: projected gradient
// descent over one probability simplex per job (each job's fractions across
// its available intervals), with backtracking line search. Non-convergence
// is reported through the result, never silently.
MinEnergyResult min_energy(const std::vector<int>& subset,
                           const Instance& instance, const Timeline& timeline,
                           const PgdOptions& options = {});

// Exact offline optimum by enumerating every finish-subset. Throws
// std::invalid_argument when the instance exceeds `max_jobs` jobs.
OracleResult optimal_cost(const Instance& instance, int max_jobs = 12,
                          const PgdOptions& options = {});

// Single-processor finish-all optimum: repeatedly fix the maximum-density
// time window, remove its jobs, and compress time. Throws unless
// machines == 1.
double yds_energy(const Instance& instance);

}  // namespace pdsched
