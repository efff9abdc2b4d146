#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdsched/dual_certificate.hpp"
#include "pdsched/generators.hpp"
#include "pdsched/instance_io.hpp"
#include "pdsched/offline_oracle.hpp"
#include "pdsched/pd_online.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kCertificateViolation = 3;
constexpr int kOracleFailure = 4;

std::string fmt(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

int run_simulate(const std::string& path, double delta, bool with_oracle,
                 const std::string& out, const std::string& trace) {
  const pdsched::Instance instance = pdsched::load_instance(path);
  if (delta <= 0.0) delta = pdsched::default_delta(instance.alpha);
  const pdsched::SimulationOutcome outcome =
      pdsched::simulate(instance, delta, with_oracle);
  if (!trace.empty()) {
    write_text(trace, pdsched::schedule_trace_csv(instance, outcome.run));
  }
  emit(out, pdsched::report_to_json(instance, outcome));
  if (!outcome.certificate_ok) {
    std::cerr << "certificate violated: cost " << outcome.run.cost.total
              << " exceeds " << pdsched::ratio_bound(instance.alpha)
              << " * " << outcome.certificate.g << "\n";
    return kCertificateViolation;
  }
  if (outcome.oracle && !outcome.oracle->converged) {
    std::cerr << "offline oracle did not converge\n";
    return kOracleFailure;
  }
  return kOk;
}

int run_oracle(const std::string& path, const std::string& out) {
  const pdsched::Instance instance = pdsched::load_instance(path);
  const pdsched::OracleResult result = pdsched::optimal_cost(instance);
  nlohmann::ordered_json doc;
  doc["instance"] = {{"digest", pdsched::instance_digest(instance)},
                     {"alpha", instance.alpha},
                     {"m", instance.machines},
                     {"jobs", instance.jobs.size()}};
  nlohmann::ordered_json finished = nlohmann::ordered_json::array();
  for (int j : result.best_subset) finished.push_back(instance.jobs[j].id);
  doc["optimal"] = {{"total", result.total},
                    {"energy", result.energy},
                    {"finished_ids", std::move(finished)},
                    {"iterations", result.total_iterations},
                    {"worst_pg_norm", result.worst_pg_norm},
                    {"converged", result.converged}};
  emit(out, doc.dump(2) + "\n");
  if (!result.converged) {
    std::cerr << "offline oracle did not converge\n";
    return kOracleFailure;
  }
  return kOk;
}

int run_sweep_n(double alpha, const std::vector<int>& ns,
                const std::string& out) {
  std::string csv = "n,total_cost,optimal_cost,ratio,bound\n";
  for (int n : ns) {
    const pdsched::Instance instance = pdsched::gen_lower_bound(n, alpha);
    const pdsched::RunReport report =
        pdsched::run(instance, pdsched::default_delta(alpha));
    const double optimal = pdsched::yds_energy(instance);
    csv += std::to_string(n) + ',' + fmt(report.cost.total) + ',' +
           fmt(optimal) + ',' + fmt(report.cost.total / optimal) + ',' +
           fmt(pdsched::ratio_bound(alpha)) + '\n';
  }
  emit(out, csv);
  return kOk;
}

int run_sweep_delta(double alpha, int m, int n, std::uint64_t seed,
                    std::vector<double> deltas, const std::string& out) {
  if (deltas.empty()) {
    deltas = {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0,
              pdsched::default_delta(alpha)};
  }
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  const pdsched::Instance instance = pdsched::gen_random(seed, n, m, alpha);
  std::string csv = "delta,total_cost,dual_bound,certified_ratio,bound\n";
  for (double delta : deltas) {
    const pdsched::SimulationOutcome outcome =
        pdsched::simulate(instance, delta, false);
    csv += fmt(delta) + ',' + fmt(outcome.run.cost.total) + ',' +
           fmt(outcome.certificate.g) + ',' + fmt(outcome.certified_ratio) +
           ',' + fmt(pdsched::ratio_bound(alpha)) + '\n';
  }
  emit(out, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online scheduling of valuable deadline jobs on speed-scalable "
               "processors, with a per-run optimality certificate"};
  app.require_subcommand(1);

  std::string sim_path, sim_out, sim_trace;
  double sim_delta = -1.0;
  bool sim_oracle = false;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run the online scheduler over an instance file");
  sim->add_option("instance", sim_path, "instance JSON file")->required();
  sim->add_option("--delta", sim_delta,
                  "price dampening in (0,1]; defaults to alpha^(1-alpha)");
  sim->add_flag("--with-oracle", sim_oracle,
                "also compute the exact offline optimum (small instances)");
  sim->add_option("--out", sim_out, "write the JSON report to this file");
  sim->add_option("--trace", sim_trace, "write the schedule trace CSV here");

  std::string oracle_path, oracle_out;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exact offline optimum of a small instance");
  oracle->add_option("instance", oracle_path, "instance JSON file")
      ->required();
  oracle->add_option("--out", oracle_out, "write the JSON result here");

  CLI::App* gen = app.add_subcommand("gen", "Generate instance files");
  gen->require_subcommand(1);

  int glb_n = 8;
  double glb_alpha = 2.0;
  double glb_scale = 1000.0;
  std::string glb_out;
  CLI::App* glb = gen->add_subcommand(
      "lower-bound",
      "Nested-window single-processor family with a ratio that grows with n");
  glb->add_option("--n", glb_n, "number of jobs")->check(CLI::PositiveNumber);
  glb->add_option("--alpha", glb_alpha, "energy exponent (> 1)");
  glb->add_option("--value-scale", glb_scale,
                  "how far job values sit above any reachable price");
  glb->add_option("--out", glb_out, "write the instance here");

  int grnd_n = 6;
  int grnd_m = 2;
  double grnd_alpha = 2.0;
  std::uint64_t grnd_seed = 1;
  std::string grnd_out;
  CLI::App* grnd =
      gen->add_subcommand("random", "Uniformly sampled windows and values");
  grnd->add_option("--n", grnd_n, "number of jobs")
      ->check(CLI::PositiveNumber);
  grnd->add_option("--m", grnd_m, "number of processors")
      ->check(CLI::PositiveNumber);
  grnd->add_option("--alpha", grnd_alpha, "energy exponent (> 1)");
  grnd->add_option("--seed", grnd_seed, "generator seed");
  grnd->add_option("--out", grnd_out, "write the instance here");

  std::string sweep_vary = "n", sweep_out;
  double sweep_alpha = 2.0;
  int sweep_m = 2;
  int sweep_n = 8;
  std::uint64_t sweep_seed = 1;
  std::vector<int> sweep_ns = {2, 5, 10, 20, 50};
  std::vector<double> sweep_deltas;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Cost/bound curves over n (hard family) or delta (random)");
  sweep->add_option("--vary", sweep_vary, "what to vary")
      ->check(CLI::IsMember({"n", "delta"}));
  sweep->add_option("--alpha", sweep_alpha, "energy exponent (> 1)");
  sweep->add_option("--m", sweep_m, "processors (delta sweep)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--n", sweep_n, "jobs in the random instance (delta sweep)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "seed of the random instance");
  sweep->add_option("--ns", sweep_ns, "sizes for the n sweep")
      ->delimiter(',');
  sweep->add_option("--deltas", sweep_deltas, "levels for the delta sweep")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "write the CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(sim_path, sim_delta, sim_oracle, sim_out, sim_trace);
    }
    if (oracle->parsed()) return run_oracle(oracle_path, oracle_out);
    if (glb->parsed()) {
      emit(glb_out, pdsched::instance_to_json(
                        pdsched::gen_lower_bound(glb_n, glb_alpha, glb_scale)));
      return kOk;
    }
    if (grnd->parsed()) {
      emit(grnd_out,
           pdsched::instance_to_json(
               pdsched::gen_random(grnd_seed, grnd_n, grnd_m, grnd_alpha)));
      return kOk;
    }
    if (sweep->parsed()) {
      if (sweep_vary == "n") {
        return run_sweep_n(sweep_alpha, sweep_ns, sweep_out);
      }
      return run_sweep_delta(sweep_alpha, sweep_m, sweep_n, sweep_seed,
                             sweep_deltas, sweep_out);
    }
  } catch (const pdsched::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
