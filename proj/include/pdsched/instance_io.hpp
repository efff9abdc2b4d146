#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "pdsched/dual_certificate.hpp"
#include "pdsched/job.hpp"
#include "pdsched/offline_oracle.hpp"
#include "pdsched/pd_online.hpp"

namespace pdsched {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

// FNV-1a over the canonical serialization; stable fingerprint for
// determinism checks and report provenance.
std::string instance_digest(const Instance& instance);

struct SimulationOutcome {
  RunReport run;
  DualCertificate certificate;
  double certified_ratio = 0.0;
  bool certificate_ok = false;  // cost <= alpha^alpha * g within tolerance
  std::optional<OracleResult> oracle;
};

SimulationOutcome simulate(const Instance& instance, double delta,
                           bool with_oracle = false);

// Machine-readable report of a full run (instance digest, cost split,
// certificate, per-job decisions, optional oracle block).
std::string report_to_json(const Instance& instance,
                           const SimulationOutcome& outcome);

// One row per (interval, processor, segment): interval_index, t_start,
// t_end, processor, job_id or IDLE, speed.
std::string schedule_trace_csv(const Instance& instance,
                               const RunReport& report);

}  // namespace pdsched
