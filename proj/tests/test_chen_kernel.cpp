#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdsched/chen_kernel.hpp"

using namespace pdsched::chen;

namespace {

IntervalLoads loads_of(std::vector<double> work, int machines = 1,
                       double length = 1.0) {
  IntervalLoads loads;
  loads.work = std::move(work);
  loads.machines = machines;
  loads.length = length;
  return loads;
}

}  // namespace

TEST_CASE("dedicated prefix follows the remaining-average rule") {
  SUBCASE("one big job above the rest") {
    // 3 >= (1+1+1)/(2-1) holds, so slot 0 runs alone; the rest pools.
    const auto dedicated = dedicated_set(loads_of({3, 1, 1, 1}, 2));
    CHECK(dedicated == std::vector<int>{0});
  }
  SUBCASE("an exact tie dedicates eagerly") {
    // 3 >= 3/(2-1) holds with equality, so slot 0 is dedicated; slot 1 then
    // fills the last machine exactly. Pooling would give the same speeds.
    CHECK(dedicated_set(loads_of({3, 3}, 2)) == std::vector<int>{0, 1});
  }
  SUBCASE("last machine is dedicated only when nothing remains") {
    CHECK(dedicated_set(loads_of({4, 3}, 2)) == std::vector<int>{0, 1});
    CHECK(dedicated_set(loads_of({4, 3, 0.01}, 2)) == std::vector<int>{0});
  }
  SUBCASE("zero loads are never dedicated") {
    CHECK(dedicated_set(loads_of({4, 3, 0}, 2)) == std::vector<int>{0, 1});
    CHECK(dedicated_set(loads_of({0, 0}, 2)).empty());
  }
  SUBCASE("ties break toward the smaller id") {
    const auto dedicated = dedicated_set(loads_of({2, 2}, 1));
    CHECK(dedicated.empty());  // 2 < 2 fails the rank-1 test on one machine
    IntervalLoads tied = loads_of({5, 5, 1, 1}, 3);
    tied.ids = {7, 4, 1, 2};
    CHECK(dedicated_set(tied) == std::vector<int>{1, 0});
  }
}

TEST_CASE("minimal energy of an interval") {
  SUBCASE("one dedicated plus a shared pool") {
    // Slot 0 at speed 3 alone, loads 1+1+1 pooled at speed 3 on the other
    // machine: 9 + 9.
    CHECK(power(loads_of({3, 1, 1, 1}, 2), 2.0) == doctest::Approx(18.0));
    // 4 alone (energy 16), 1+1 pooled at 2 (energy 4).
    CHECK(power(loads_of({4, 1, 1}, 2), 2.0) == doctest::Approx(20.0));
  }
  SUBCASE("single machine is a plain sum") {
    CHECK(power(loads_of({0.5, 0.3}), 2.0) == doctest::Approx(0.64));
  }
  SUBCASE("length scales speeds down") {
    // Load 6 over length 2 runs at 3: energy 2 * 3^2.
    CHECK(power(loads_of({6}, 3, 2.0), 2.0) == doctest::Approx(18.0));
  }
  SUBCASE("empty interval burns nothing") {
    CHECK(power(loads_of({}, 2), 2.5) == 0.0);
    CHECK(power(loads_of({0, 0}, 2), 2.5) == 0.0);
  }
  SUBCASE("splitting equal loads across machines beats stacking them") {
    // Two machines, loads (2, 2): pooling runs both at 2 for energy 8; any
    // single-machine stacking would cost 16.
    CHECK(power(loads_of({2, 2}, 2), 2.0) == doctest::Approx(8.0));
  }
}

TEST_CASE("per-slot speeds in the minimal schedule") {
  const auto loads = loads_of({3, 1, 1, 1}, 2);
  CHECK(speed_of(loads, 0) == doctest::Approx(3.0));
  CHECK(speed_of(loads, 1) == doctest::Approx(3.0));
  CHECK(speed_of(loads, 3) == doctest::Approx(3.0));
  CHECK(speed_of(loads_of({4, 1, 1}, 2), 1) == doctest::Approx(2.0));
  CHECK(speed_of(loads_of({6}, 3, 2.0), 0) == doctest::Approx(3.0));
}

TEST_CASE("zero-load slots report the limiting pool speed") {
  // With (4, 3) on two machines everything is dedicated; a vanishing extra
  // load would share a machine with the load of 3, so the one-sided limit
  // is 3, not 0.
  CHECK(speed_of(loads_of({4, 3, 0}, 2), 2) == doctest::Approx(3.0));
  // Balanced pool: the newcomer joins it at the pool speed.
  CHECK(speed_of(loads_of({3, 3, 0}, 2), 2) == doctest::Approx(3.0));
  // A big dedicated load stays out of the limit.
  CHECK(speed_of(loads_of({8, 1, 0}, 2), 2) == doctest::Approx(1.0));
  // Single machine: everything would pool with the newcomer.
  CHECK(speed_of(loads_of({0.5, 0.3, 0}, 1), 2) == doctest::Approx(0.8));
  // Empty interval: the limit of load/(m*l) is 0.
  CHECK(speed_of(loads_of({0}, 2), 0) == 0.0);
}

TEST_CASE("gradient of the interval energy") {
  // d(energy)/d(fraction) = work * alpha * speed^(alpha-1); slot 1 pools at
  // speed 0.5 with alpha 2 and job workload 1: 1 * 2 * 0.5 = 1.
  CHECK(grad(loads_of({0.3, 0.2}, 1), 1, 2.0, 1.0) == doctest::Approx(1.0));
  CHECK(grad(loads_of({3, 1, 1, 1}, 2), 0, 2.0, 2.0) ==
        doctest::Approx(2.0 * 2.0 * 3.0));
  // alpha = 3: 1 * 3 * 2^2 on the pooled machine of (4,1,1).
  CHECK(grad(loads_of({4, 1, 1}, 2), 2, 3.0, 1.0) == doctest::Approx(12.0));
}

TEST_CASE("gradient matches a central finite difference") {
  const double alpha = 2.5;
  const double work = 1.7;
  const double h = 1e-6;
  IntervalLoads loads = loads_of({2.0, 0.9, 0.4}, 2, 1.3);
  for (int slot = 0; slot < 3; ++slot) {
    IntervalLoads up = loads, down = loads;
    up.work[slot] += h * work;
    down.work[slot] -= h * work;
    const double fd = (power(up, alpha) - power(down, alpha)) / (2 * h);
    CHECK(grad(loads, slot, alpha, work) ==
          doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("leveled machine loads") {
  SUBCASE("dedicated loads then the pool average") {
    const auto leveled = machine_loads(loads_of({4, 1, 1}, 2));
    REQUIRE(leveled.size() == 2);
    CHECK(leveled[0] == doctest::Approx(4.0));
    CHECK(leveled[1] == doctest::Approx(2.0));
  }
  SUBCASE("idle machines carry zero") {
    const auto leveled = machine_loads(loads_of({4, 3}, 3));
    REQUIRE(leveled.size() == 3);
    CHECK(leveled[0] == doctest::Approx(4.0));
    CHECK(leveled[1] == doctest::Approx(3.0));
    CHECK(leveled[2] == 0.0);
  }
}

TEST_CASE("load that brings a newcomer exactly to a level speed") {
  SUBCASE("fills the gap left by existing load") {
    CHECK(load_at_level(loads_of({0.5}), 0.8) == doctest::Approx(0.3));
  }
  SUBCASE("caps at one machine running flat out at the level") {
    CHECK(load_at_level(loads_of({}, 2), 3.5) == doctest::Approx(3.5));
  }
  SUBCASE("counts only the machines not already above the level") {
    // 10 stays dedicated above level 3; the slower load of 1 shares the
    // second machine, leaving 3*1 - 1 of room.
    CHECK(load_at_level(loads_of({10, 1}, 2), 3.0) == doctest::Approx(2.0));
    // Everything is already above the level: no room at all.
    CHECK(load_at_level(loads_of({10, 4}, 2), 3.0) == 0.0);
  }
  SUBCASE("a formerly dedicated load can rejoin the pool") {
    // At level 3.25 the load of 3.2 is no longer dedicated; room is
    // 3.25*2 - (3.2 + 1).
    CHECK(load_at_level(loads_of({3.2, 1}, 2), 3.25) ==
          doctest::Approx(2.3));
  }
  SUBCASE("zero level admits nothing, negative levels are refused") {
    CHECK(load_at_level(loads_of({0.5}), 0.0) == 0.0);
    CHECK_THROWS_AS(load_at_level(loads_of({0.5}), -1.0),
                    std::invalid_argument);
  }
  SUBCASE("committing the returned load yields exactly the level speed") {
    const std::vector<double> levels = {0.4, 1.0, 2.7, 3.2, 5.9};
    const IntervalLoads fixed = loads_of({3.2, 1.0, 0.7}, 3, 1.4);
    for (double level : levels) {
      const double extra = load_at_level(fixed, level);
      if (extra <= 0.0) continue;
      IntervalLoads with = fixed;
      with.work.push_back(extra);
      CHECK(speed_of(with, 3) == doctest::Approx(level).epsilon(1e-12));
    }
  }
}

TEST_CASE("interval schedule places every unit of work") {
  const auto loads = loads_of({3, 1, 1, 1}, 2);
  const IntervalSchedule schedule = schedule_interval(loads);
  REQUIRE(schedule.processors.size() == 2);
  CHECK(schedule.dedicated == std::vector<int>{0});
  CHECK(schedule.pool == std::vector<int>{1, 2, 3});
  CHECK(schedule.pool_speed == doctest::Approx(3.0));

  std::vector<double> processed(loads.work.size(), 0.0);
  for (std::size_t p = 0; p < schedule.processors.size(); ++p) {
    double previous_end = 0.0;
    for (const Segment& segment : schedule.processors[p]) {
      CHECK(segment.begin >= previous_end - 1e-12);
      CHECK(segment.end <= loads.length + 1e-12);
      const double speed = p < schedule.dedicated.size()
                               ? schedule.dedicated_speed(loads, p)
                               : schedule.pool_speed;
      processed[segment.slot] += (segment.end - segment.begin) * speed;
      previous_end = segment.end;
    }
  }
  for (std::size_t slot = 0; slot < loads.work.size(); ++slot) {
    CHECK(processed[slot] == doctest::Approx(loads.work[slot]).epsilon(1e-9));
  }
}

TEST_CASE("wrapped pool jobs never run on two machines at once") {
  // Loads (1.2, 1.1, 1.0, 0.9) on two machines all pool at speed 2.1; the
  // second job wraps from machine 0 to machine 1.
  const auto loads = loads_of({1.2, 1.1, 1.0, 0.9}, 2);
  const IntervalSchedule schedule = schedule_interval(loads);
  CHECK(schedule.dedicated.empty());
  CHECK(schedule.pool_speed == doctest::Approx(2.1));
  std::vector<std::vector<std::pair<double, double>>> by_slot(4);
  for (const auto& processor : schedule.processors) {
    for (const Segment& segment : processor) {
      by_slot[segment.slot].push_back({segment.begin, segment.end});
    }
  }
  for (auto& pieces : by_slot) {
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      CHECK(pieces[i].first >= pieces[i - 1].second - 1e-12);
    }
  }
}
