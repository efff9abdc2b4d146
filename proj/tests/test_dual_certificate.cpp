#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdsched/dual_certificate.hpp"
#include "pdsched/generators.hpp"
#include "pdsched/offline_oracle.hpp"
#include "pdsched/pd_online.hpp"

using namespace pdsched;

namespace {

Instance unit_job_instance(double value) {
  Instance instance;
  instance.alpha = 2.0;
  instance.machines = 1;
  instance.jobs = {{0, 0.0, 1.0, 1.0, value}};
  return instance;
}

}  // namespace

TEST_CASE("dual speed of a multiplier") {
  CHECK(s_hat(1.0, 1.0, 2.0) == doctest::Approx(0.5));
  CHECK(s_hat(0.5, 1.0, 2.0) == doctest::Approx(0.25));
  CHECK(s_hat(0.0, 1.0, 2.0) == 0.0);
  // alpha 3, work 2: (12 / (3*2))^(1/2).
  CHECK(s_hat(12.0, 2.0, 3.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rejection yield threshold and categories") {
  CHECK(low_yield_threshold(2.0) == doctest::Approx(1.5));
  CHECK(categorize(true, 99.0, 2.0) == JobCategory::finished);
  CHECK(categorize(false, 1.5, 2.0) == JobCategory::low_yield);
  CHECK(categorize(false, 1.6, 2.0) == JobCategory::high_yield);
}

TEST_CASE("contributors are the fastest available jobs, capped by machines") {
  Instance instance;
  instance.alpha = 2.0;
  instance.machines = 1;
  instance.jobs = {{0, 0.0, 1.0, 1.0, 5.0}, {1, 0.0, 1.0, 1.0, 5.0}};
  const Timeline timeline = Timeline::build(instance.jobs);

  CHECK(contributing(instance, timeline, 0, {0.5, 0.7}) ==
        std::vector<int>{1});
  // Ties prefer the smaller id.
  CHECK(contributing(instance, timeline, 0, {0.5, 0.5}) ==
        std::vector<int>{0});
  // Zero-speed jobs never contribute.
  CHECK(contributing(instance, timeline, 0, {0.0, 0.0}).empty());
  instance.machines = 2;
  CHECK(contributing(instance, timeline, 0, {0.5, 0.7}) ==
        std::vector<int>{1, 0});
}

TEST_CASE("certificate of the worthwhile unit job") {
  const Instance instance = unit_job_instance(2.0);
  const RunReport report = run(instance, 0.5);
  const DualCertificate cert =
      dual_value(report.assignment.lambda, report.assignment.decided, instance,
                 report.timeline);
  CHECK(cert.s_hat[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cert.contrib_length[0] == doctest::Approx(1.0));
  CHECK(cert.energy[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(cert.x_hat[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cert.g == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(cert.tally_finished == 1);
  CHECK(certified_ratio(report.cost, cert, 2.0) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(ratio_bound(2.0) == doctest::Approx(4.0));
}

TEST_CASE("certificate of the rejected unit job") {
  const Instance instance = unit_job_instance(0.5);
  const RunReport report = run(instance, 0.5);
  const DualCertificate cert =
      dual_value(report.assignment.lambda, report.assignment.decided, instance,
                 report.timeline);
  CHECK(cert.s_hat[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(cert.energy[0] == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(cert.x_hat[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(cert.g == doctest::Approx(0.4375).epsilon(1e-9));
  CHECK(cert.tally_low_yield == 1);
  CHECK(certified_ratio(report.cost, cert, 2.0) ==
        doctest::Approx(8.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("certificate inputs are sanity checked") {
  const Instance instance = unit_job_instance(2.0);
  const Timeline timeline = Timeline::build(instance.jobs);
  CHECK_THROWS_AS(dual_value({3.0}, {1}, instance, timeline),
                  std::invalid_argument);  // multiplier above the value
  CHECK_THROWS_AS(dual_value({-0.1}, {1}, instance, timeline),
                  std::invalid_argument);
  CHECK_THROWS_AS(dual_value({1.0, 1.0}, {1, 1}, instance, timeline),
                  std::invalid_argument);  // size mismatch
  CHECK_THROWS_AS(
      dual_value({1.0}, {static_cast<signed char>(-1)}, instance, timeline),
      std::invalid_argument);  // undecided job
}

TEST_CASE("a useless bound cannot certify a positive cost") {
  DualCertificate cert;
  cert.g = 0.0;
  CostBreakdown cost{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(certified_ratio(cost, cert, 2.0), std::runtime_error);
}

TEST_CASE("the bound holds and stays below alpha^alpha on random instances") {
  for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
    const Instance instance = gen_random(seed, 6, 2, 2.0);
    const RunReport report = run(instance, default_delta(2.0));
    const DualCertificate cert =
        dual_value(report.assignment.lambda, report.assignment.decided,
                   instance, report.timeline);
    REQUIRE(cert.g > 0.0);
    CHECK(report.cost.total <= ratio_bound(2.0) * cert.g * (1.0 + 1e-9));
  }
}

TEST_CASE("the dual value never exceeds the exact offline optimum") {
  for (std::uint64_t seed : {31u, 32u}) {
    const Instance instance = gen_random(seed, 5, 1, 2.0);
    const RunReport report = run(instance, default_delta(2.0));
    const DualCertificate cert =
        dual_value(report.assignment.lambda, report.assignment.decided,
                   instance, report.timeline);
    const OracleResult optimal = optimal_cost(instance);
    REQUIRE(optimal.converged);
    CHECK(cert.g <= optimal.total + 1e-6 * (1.0 + optimal.total));
    // The scheduler itself can never beat the optimum.
    CHECK(report.cost.total >= optimal.total - 1e-6 * (1.0 + optimal.total));
  }
}
