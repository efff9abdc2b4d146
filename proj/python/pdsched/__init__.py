"""Online profit-aware scheduling of deadline jobs on speed-scalable processors.

The heavy lifting lives in the compiled extension ``pdsched._core``; this
package re-exports its public surface.
"""

from ._core import (
    CostBreakdown,
    Instance,
    Job,
    OracleResult,
    ParseError,
    SimulationOutcome,
    default_delta,
    gen_lower_bound,
    gen_random,
    instance_digest,
    instance_to_json,
    load_instance,
    low_yield_threshold,
    optimal_cost,
    parse_instance,
    ratio_bound,
    report_json,
    schedule_trace_csv,
    simulate,
    yds_energy,
)

__all__ = [
    "CostBreakdown",
    "Instance",
    "Job",
    "OracleResult",
    "ParseError",
    "SimulationOutcome",
    "default_delta",
    "gen_lower_bound",
    "gen_random",
    "instance_digest",
    "instance_to_json",
    "load_instance",
    "low_yield_threshold",
    "optimal_cost",
    "parse_instance",
    "ratio_bound",
    "report_json",
    "schedule_trace_csv",
    "simulate",
    "yds_energy",
]

__version__ = "0.1.0"
