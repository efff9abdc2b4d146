// Python bindings for the scheduler core. Only value-type entry points are
// exposed: instances go in, finished reports come out, nothing keeps a
// reference into C++ state.

#include <optional>
#include <stdexcept>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdsched/dual_certificate.hpp"
#include "pdsched/generators.hpp"
#include "pdsched/instance_io.hpp"
#include "pdsched/offline_oracle.hpp"
#include "pdsched/pd_online.hpp"

namespace py = pybind11;
using namespace pdsched;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Online profit-aware scheduling of deadline jobs on speed-scalable "
      "processors, with a certified cost bound and exact offline oracles.";

  py::class_<Job>(m, "Job")
      .def(py::init<>())
      .def(py::init([](int id, double release, double deadline, double work,
                       double value) {
             Job job;
             job.id = id;
             job.release = release;
             job.deadline = deadline;
             job.work = work;
             job.value = value;
             return job;
           }),
           py::arg("id"), py::arg("release"), py::arg("deadline"),
           py::arg("work"), py::arg("value"))
      .def_readwrite("id", &Job::id)
      .def_readwrite("release", &Job::release)
      .def_readwrite("deadline", &Job::deadline)
      .def_readwrite("work", &Job::work)
      .def_readwrite("value", &Job::value)
      .def("window_length", &Job::window_length)
      .def("__repr__", [](const Job& job) {
        return "Job(id=" + std::to_string(job.id) +
               ", release=" + std::to_string(job.release) +
               ", deadline=" + std::to_string(job.deadline) +
               ", work=" + std::to_string(job.work) +
               ", value=" + std::to_string(job.value) + ")";
      });

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def(py::init([](double alpha, int machines, std::vector<Job> jobs) {
             Instance instance;
             instance.alpha = alpha;
             instance.machines = machines;
             instance.jobs = std::move(jobs);
             return instance;
           }),
           py::arg("alpha"), py::arg("machines"), py::arg("jobs"))
      .def_readwrite("alpha", &Instance::alpha)
      .def_readwrite("machines", &Instance::machines)
      .def_readwrite("jobs", &Instance::jobs)
      .def("validate", &Instance::validate);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("energy", &CostBreakdown::energy)
      .def_readonly("lost_value", &CostBreakdown::lost_value)
      .def_readonly("total", &CostBreakdown::total);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("best_subset", &OracleResult::best_subset)
      .def_readonly("energy", &OracleResult::energy)
      .def_readonly("total", &OracleResult::total)
      .def_readonly("total_iterations", &OracleResult::total_iterations)
      .def_readonly("worst_pg_norm", &OracleResult::worst_pg_norm)
      .def_readonly("converged", &OracleResult::converged);

  py::class_<SimulationOutcome>(m, "SimulationOutcome")
      .def_readonly("certified_ratio", &SimulationOutcome::certified_ratio)
      .def_readonly("certificate_ok", &SimulationOutcome::certificate_ok)
      .def_readonly("oracle", &SimulationOutcome::oracle)
      .def_property_readonly(
          "cost", [](const SimulationOutcome& s) { return s.run.cost; })
      .def_property_readonly(
          "delta", [](const SimulationOutcome& s) { return s.run.delta; })
      .def_property_readonly(
          "g", [](const SimulationOutcome& s) { return s.certificate.g; })
      .def_property_readonly("lambdas",
                             [](const SimulationOutcome& s) {
                               return s.run.assignment.lambda;
                             })
      .def_property_readonly("finished", [](const SimulationOutcome& s) {
        std::vector<bool> out;
        out.reserve(s.run.assignment.decided.size());
        for (std::size_t j = 0; j < s.run.assignment.decided.size(); ++j) {
          out.push_back(s.run.assignment.finished(static_cast<int>(j)));
        }
        return out;
      });

  m.def(
      "simulate",
      [](const Instance& instance, std::optional<double> delta,
         bool with_oracle) {
        const double d = delta.value_or(default_delta(instance.alpha));
        return simulate(instance, d, with_oracle);
      },
      py::arg("instance"), py::arg("delta") = std::nullopt,
      py::arg("with_oracle") = false,
      "Run the online scheduler and build its certified cost bound.");
  m.def(
      "report_json",
      [](const Instance& instance, const SimulationOutcome& outcome) {
        return report_to_json(instance, outcome);
      },
      py::arg("instance"), py::arg("outcome"));
  m.def(
      "schedule_trace_csv",
      [](const Instance& instance, const SimulationOutcome& outcome) {
        return schedule_trace_csv(instance, outcome.run);
      },
      py::arg("instance"), py::arg("outcome"));

  m.def("default_delta", &default_delta, py::arg("alpha"));
  m.def("ratio_bound", &ratio_bound, py::arg("alpha"));
  m.def("low_yield_threshold", &low_yield_threshold, py::arg("alpha"));

  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("instance_to_json", &instance_to_json, py::arg("instance"));
  m.def("instance_digest", &instance_digest, py::arg("instance"));

  m.def("gen_lower_bound", &gen_lower_bound, py::arg("n"), py::arg("alpha"),
        py::arg("value_scale") = 1000.0);
  m.def(
      "gen_random",
      [](std::uint64_t seed, int n, int machines, double alpha) {
        return gen_random(seed, n, machines, alpha);
      },
      py::arg("seed"), py::arg("n"), py::arg("machines"), py::arg("alpha"));

  m.def("yds_energy", &yds_energy, py::arg("instance"),
        "Exact minimal energy for finishing every job on one processor.");
  m.def(
      "optimal_cost",
      [](const Instance& instance, int max_jobs) {
        return optimal_cost(instance, max_jobs);
      },
      py::arg("instance"), py::arg("max_jobs") = 12,
      "Exhaustive offline optimum over all keep/reject subsets.");

  py::register_exception<ParseError>(m, "ParseError");
}
