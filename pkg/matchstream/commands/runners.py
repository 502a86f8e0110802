from fractions import Fraction
import json
import logging
from typing import Any, Dict, Iterable, Optional, Tuple

from eth_utils import to_dict

from matchstream.algorithms.multipass import MultipassConfig, run_multipass
from matchstream.algorithms.oracles import OracleBudget, exact_mwm
from matchstream.algorithms.rand_arr import RandArrParams, rand_arr_matching
from matchstream.algorithms.unweighted import (
    maximum_cardinality_matching,
    random_arrival_unweighted,
)
from matchstream.algorithms.wgt_aug_paths import WapParams
from matchstream.config import Config
from matchstream.constants import DEFAULT_UNWEIGHTED_BETA, JSON_SCHEMA_VERSION
from matchstream.graph import Matching, WeightedGraph
from matchstream.stream import make_random_order

logger = logging.getLogger("matchstream.runners")

Report = Dict[str, Any]

ORACLE = "oracle"
UNWEIGHTED = "unweighted"
RANDOM_ARRIVAL = "random_arrival"
MULTIPASS = "multipass"


@to_dict
def report_header(algorithm: str, seed: int, graph: WeightedGraph) -> Iterable[Tuple[str, Any]]:
    yield "schema", JSON_SCHEMA_VERSION
    yield "algorithm", algorithm
    yield "seed", seed
    yield "n", graph.n
    yield "m", graph.m


def render_report(report: Report) -> str:
    return json.dumps(report, indent=4) + "\n"


def _ratio(value: int, optimum: Optional[int]) -> Optional[float]:
    if optimum is None:
        return None
    if optimum == 0:
        return 1.0
    return value / optimum


def run_oracle(graph: WeightedGraph, budget: OracleBudget) -> Tuple[Matching, Report]:
    matching = exact_mwm(graph, budget=budget)
    report = report_header(ORACLE, 0, graph)
    report.update({"weight": matching.weight, "size": len(matching)})
    return matching, report


def run_unweighted(
    graph: WeightedGraph,
    config: Config,
    p: Fraction,
    beta: Fraction = DEFAULT_UNWEIGHTED_BETA,
) -> Tuple[Matching, Report]:
    session = make_random_order(graph, config.seed, config.make_meter(graph.n))
    matching = random_arrival_unweighted(session, p, beta)
    opt_size = len(maximum_cardinality_matching(graph))
    report = report_header(UNWEIGHTED, config.seed, graph)
    report.update(
        {
            "size": len(matching),
            "opt_size": opt_size,
            "ratio": _ratio(len(matching), opt_size),
            "peak_edges": session.meter.peak,
            "passes": session.pass_count,
        }
    )
    return matching, report


def run_random_arrival(
    graph: WeightedGraph,
    config: Config,
    p: Optional[Fraction] = None,
    wap: Optional[WapParams] = None,
    with_oracle: bool = False,
) -> Tuple[Matching, Report]:
    session = make_random_order(graph, config.seed, config.make_meter(graph.n))
    params = RandArrParams(
        p=p,
        wap=WapParams.build() if wap is None else wap,
        with_oracle=with_oracle,
        oracle_budget=config.oracle_budget,
    )
    matching, rand_arr_report = rand_arr_matching(session, params)
    report = report_header(RANDOM_ARRIVAL, config.seed, graph)
    report.update(rand_arr_report._asdict())
    report["passes"] = session.pass_count
    return matching, report


def run_multipass_report(
    graph: WeightedGraph,
    config: Config,
    cfg: MultipassConfig,
    with_oracle: bool = False,
) -> Tuple[Matching, Report]:
    meter = config.make_meter(graph.n)
    result = run_multipass(graph, cfg, max_workers=config.threads, meter=meter)
    opt_weight = exact_mwm(graph, budget=config.oracle_budget).weight if with_oracle else None
    report = report_header(MULTIPASS, cfg.seed, graph)
    report.update(
        {
            "final_weight": result.matching.weight,
            "opt_weight": opt_weight,
            "ratio": _ratio(result.matching.weight, opt_weight),
            "iterations_run": result.iterations_run,
            "passes": result.passes,
            "peak_edges": result.peak_edges,
            "per_iteration_gains": list(result.per_iteration_gains),
        }
    )
    return result.matching, report
