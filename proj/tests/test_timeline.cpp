#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "pdsched/timeline.hpp"

using pdsched::Job;
using pdsched::Timeline;

namespace {

Job job(int id, double release, double deadline) {
  return {id, release, deadline, 1.0, 1.0};
}

}  // namespace

TEST_CASE("boundaries are the distinct releases and deadlines") {
  const std::vector<Job> jobs = {job(0, 0.0, 2.0), job(1, 1.0, 2.0),
                                 job(2, 1.0, 3.0)};
  const Timeline timeline = Timeline::build(jobs);
  REQUIRE(timeline.intervals() == 3);
  CHECK(timeline.boundaries() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(timeline.start(1) == 1.0);
  CHECK(timeline.end(1) == 2.0);
  CHECK(timeline.length(2) == 1.0);
}

TEST_CASE("building from zero jobs is refused") {
  CHECK_THROWS_AS(Timeline::build({}), std::invalid_argument);
}

TEST_CASE("availability is exact containment of the atomic interval") {
  const std::vector<Job> jobs = {job(0, 0.0, 2.0), job(1, 1.0, 3.0)};
  const Timeline timeline = Timeline::build(jobs);  // 0,1,2,3
  CHECK(timeline.available(jobs[0], 0));
  CHECK(timeline.available(jobs[0], 1));
  CHECK_FALSE(timeline.available(jobs[0], 2));
  CHECK_FALSE(timeline.available(jobs[1], 0));
  CHECK(timeline.available(jobs[1], 1));
  CHECK(timeline.available(jobs[1], 2));
}

TEST_CASE("refining splits committed fractions by sub-length") {
  const std::vector<Job> jobs = {job(0, 0.0, 2.0)};
  Timeline timeline = Timeline::build(jobs);
  std::vector<std::vector<double>> x = {{1.0}};

  SUBCASE("midpoint gives equal halves") {
    timeline.refine(job(1, 1.0, 2.0), x);
    CHECK(timeline.boundaries() == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(x[0] == std::vector<double>{0.5, 0.5});
  }

  SUBCASE("asymmetric cut keeps proportions and the row sum") {
    timeline.refine(job(1, 0.6, 2.0), x);
    CHECK(x[0].size() == 2);
    CHECK(x[0][0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(x[0][0] + x[0][1] == 1.0);
  }

  SUBCASE("existing boundaries are a no-op") {
    timeline.refine(job(1, 0.0, 2.0), x);
    CHECK(timeline.intervals() == 1);
    CHECK(x[0] == std::vector<double>{1.0});
  }
}

TEST_CASE("a later deadline extends the horizon with an empty interval") {
  const std::vector<Job> jobs = {job(0, 0.0, 1.0)};
  Timeline timeline = Timeline::build(jobs);
  std::vector<std::vector<double>> x = {{1.0}, {0.0}};
  timeline.refine(job(1, 0.5, 3.0), x);
  CHECK(timeline.boundaries() == std::vector<double>{0.0, 0.5, 1.0, 3.0});
  CHECK(x[0] == std::vector<double>{0.5, 0.5, 0.0});
  CHECK(x[1] == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("incremental refinement reaches the full boundary set") {
  const std::vector<Job> jobs = {job(0, 0.0, 4.0), job(1, 1.0, 2.5),
                                 job(2, 2.5, 6.0)};
  Timeline incremental;
  std::vector<std::vector<double>> x(3);
  for (const Job& j : jobs) incremental.refine(j, x);
  const Timeline upfront = Timeline::build(jobs);
  CHECK(incremental.boundaries() == upfront.boundaries());
  for (const auto& row : x) {
    CHECK(static_cast<int>(row.size()) == incremental.intervals());
  }
}
