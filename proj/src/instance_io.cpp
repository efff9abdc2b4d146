#include "pdsched/instance_io.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace pdsched {

namespace {

using json = nlohmann::ordered_json;

// Shortest representation that round-trips exactly.
std::string fmt(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  assert(result.ec == std::errc());
  return std::string(buffer, result.ptr);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Instance instance;
  try {
    instance.alpha = doc.at("alpha").get<double>();
    instance.machines = doc.at("m").get<int>();
    for (const auto& entry : doc.at("jobs")) {
      Job job;
      job.id = entry.at("id").get<int>();
      job.release = entry.at("release").get<double>();
      job.deadline = entry.at("deadline").get<double>();
      job.work = entry.at("workload").get<double>();
      job.value = entry.at("value").get<double>();
      instance.jobs.push_back(job);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
  instance.validate();
  return instance;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_instance(text.str());
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["alpha"] = instance.alpha;
  doc["m"] = instance.machines;
  json jobs = json::array();
  for (const Job& job : instance.jobs) {
    jobs.push_back({{"id", job.id},
                    {"release", job.release},
                    {"deadline", job.deadline},
                    {"workload", job.work},
                    {"value", job.value}});
  }
  doc["jobs"] = std::move(jobs);
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance);
}

std::string instance_digest(const Instance& instance) {
  const std::string text = instance_to_json(instance);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

SimulationOutcome simulate(const Instance& instance, double delta,
                           bool with_oracle) {
  SimulationOutcome outcome;
  outcome.run = run(instance, delta, Partition::online);
  outcome.certificate =
      dual_value(outcome.run.assignment.lambda, outcome.run.assignment.decided,
                 instance, outcome.run.timeline);
  const double bound = ratio_bound(instance.alpha);
  if (outcome.run.cost.total <= 0.0 && outcome.certificate.g <= 0.0) {
    outcome.certified_ratio = 1.0;
    outcome.certificate_ok = true;
  } else if (outcome.certificate.g > 0.0) {
    outcome.certified_ratio = outcome.run.cost.total / outcome.certificate.g;
    outcome.certificate_ok = outcome.certified_ratio <= bound * (1.0 + 1e-6);
  } else {
    outcome.certified_ratio = std::numeric_limits<double>::infinity();
    outcome.certificate_ok = false;
  }
  if (with_oracle) outcome.oracle = optimal_cost(instance);
  return outcome;
}

std::string report_to_json(const Instance& instance,
                           const SimulationOutcome& outcome) {
  json doc;
  doc["instance"] = {{"digest", instance_digest(instance)},
                     {"alpha", instance.alpha},
                     {"m", instance.machines},
                     {"jobs", instance.jobs.size()},
                     {"intervals", outcome.run.timeline.intervals()}};
  doc["delta"] = outcome.run.delta;
  doc["cost"] = {{"energy", outcome.run.cost.energy},
                 {"lost_value", outcome.run.cost.lost_value},
                 {"total", outcome.run.cost.total}};
  doc["certificate"] = {{"g", outcome.certificate.g},
                        {"ratio", outcome.certified_ratio},
                        {"bound", ratio_bound(instance.alpha)},
                        {"ok", outcome.certificate_ok},
                        {"finished", outcome.certificate.tally_finished},
                        {"low_yield", outcome.certificate.tally_low_yield},
                        {"high_yield", outcome.certificate.tally_high_yield}};
  json decisions = json::array();
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    decisions.push_back(
        {{"id", instance.jobs[j].id},
         {"status",
          outcome.run.assignment.decided[j] == 1 ? "finished" : "rejected"},
         {"lambda", outcome.run.assignment.lambda[j]},
         {"s_hat", outcome.certificate.s_hat[j]},
         {"x_hat", outcome.certificate.x_hat[j]}});
  }
  doc["decisions"] = std::move(decisions);
  if (outcome.oracle) {
    json finished = json::array();
    for (int j : outcome.oracle->best_subset) {
      finished.push_back(instance.jobs[j].id);
    }
    doc["oracle"] = {{"total", outcome.oracle->total},
                     {"energy", outcome.oracle->energy},
                     {"finished_ids", std::move(finished)},
                     {"iterations", outcome.oracle->total_iterations},
                     {"worst_pg_norm", outcome.oracle->worst_pg_norm},
                     {"converged", outcome.oracle->converged},
                     {"ratio_to_optimal",
                      outcome.oracle->total > 0.0
                          ? outcome.run.cost.total / outcome.oracle->total
                          : 1.0}};
  }
  return doc.dump(2) + "\n";
}

std::string schedule_trace_csv(const Instance& instance,
                               const RunReport& report) {
  std::string csv = "interval_index,t_start,t_end,processor,job_id,speed\n";
  const Timeline& timeline = report.timeline;
  for (int k = 0; k < timeline.intervals(); ++k) {
    const chen::IntervalLoads loads =
        collect_loads(instance, timeline, report.assignment, k);
    const chen::IntervalSchedule& schedule = report.schedules[k];
    assert(static_cast<int>(schedule.processors.size()) == instance.machines);

    std::vector<char> is_dedicated(loads.work.size(), 0);
    for (int slot : schedule.dedicated) is_dedicated[slot] = 1;
    const double t0 = timeline.start(k);
    const double length = timeline.length(k);
    const double dust = 1e-12 * length;

    auto add_row = [&](double begin, double end, int processor,
                       const std::string& id, double speed) {
      csv += std::to_string(k) + ',' + fmt(t0 + begin) + ',' + fmt(t0 + end) +
             ',' + std::to_string(processor) + ',' + id + ',' + fmt(speed) +
             '\n';
    };

    for (int p = 0; p < instance.machines; ++p) {
      double cursor = 0.0;
      for (const chen::Segment& segment : schedule.processors[p]) {
        if (segment.begin > cursor + dust) {
          add_row(cursor, segment.begin, p, "IDLE", 0.0);
        }
        const double speed = is_dedicated[segment.slot]
                                 ? loads.work[segment.slot] / length
                                 : schedule.pool_speed;
        add_row(segment.begin, segment.end, p,
                std::to_string(loads.ids[segment.slot]), speed);
        cursor = segment.end;
      }
      if (cursor < length - dust) add_row(cursor, length, p, "IDLE", 0.0);
    }
  }
  return csv;
}

}  // namespace pdsched
