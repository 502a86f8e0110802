"""
Single-pass random-arrival weighted matching.

Phase 1 runs local ratio on a prefix of the stream and unwinds it into M0. Phase 2
keeps the edges that beat the frozen potentials (the residual set T) while
Wgt-Aug-Paths looks for improvements of M0. The output is the heavier of the
residual-based matching M1 and the Wgt-Aug-Paths result M2.
"""
from fractions import Fraction
import logging
import math
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from matchstream._utils.prng import derive_subseed
from matchstream.algorithms.local_ratio import (
    LocalRatioState,
    lr_freeze,
    lr_process,
    lr_unwind,
    residual_filter,
    residual_weight,
)
from matchstream.algorithms.oracles import OracleBudget, exact_mwm
from matchstream.algorithms.wgt_aug_paths import (
    WapParams,
    wap_feed,
    wap_finalize,
    wap_initialize,
)
from matchstream.constants import DEFAULT_P_NUMERATOR, MAX_SAMPLING_RATE
from matchstream.exceptions import OracleOversizeError, ParameterError
from matchstream.graph import Edge, Matching, WeightedGraph
from matchstream.stream import StreamSession, charge, next_pass

logger = logging.getLogger("matchstream.rand_arr")

Number = Union[int, float, Fraction]

EXACT = "exact"
LOCAL_RATIO = "local_ratio"
BRANCH_M1 = "M1"
BRANCH_M2 = "M2"


class RandArrParams(NamedTuple):
    p: Optional[Fraction] = None
    wap: WapParams = WapParams.build()
    with_oracle: bool = False
    oracle_budget: OracleBudget = OracleBudget()


class RandArrReport(NamedTuple):
    weight: int
    opt_weight: Optional[int]
    ratio: Optional[float]
    peak_edges: int
    branch_chosen: str
    p_used: float
    residual_solver: str


def default_sampling_rate(n: int, m: int) -> Fraction:
    """
    ``100 / log2(n)`` clamped to ``[1/m, 1/2]``.
    """
    if m < 1:
        raise ParameterError("The sampling rate needs a graph with at least one edge.")
    if n < 2:
        rate = MAX_SAMPLING_RATE
    else:
        rate = Fraction(DEFAULT_P_NUMERATOR) / Fraction(math.log2(n))
    return max(Fraction(1, m), min(MAX_SAMPLING_RATE, rate))


def _resolve_sampling_rate(graph: WeightedGraph, p: Optional[Number]) -> Fraction:
    if p is None:
        return default_sampling_rate(graph.n, graph.m)
    rate = Fraction(p)
    if not 0 < rate < 1:
        raise ParameterError(f"Sampling rate p must lie in (0, 1), got {p}.")
    if math.floor(rate * graph.m) < 1:
        raise ParameterError(
            f"p * m = {float(rate * graph.m):.4f} leaves phase 1 empty; raise p or use the oracle."
        )
    return rate


def _solve_residual(
    graph: WeightedGraph,
    residual: List[Edge],
    potentials_weight: Dict[Edge, int],
    budget: OracleBudget,
) -> Tuple[Matching, str]:
    subgraph = graph.subgraph(residual)

    def reduced(edge: Edge) -> int:
        return potentials_weight[edge]

    try:
        return exact_mwm(subgraph, reduced, budget), EXACT
    except OracleOversizeError:
        logger.warning(
            "Residual set of %d edges exceeds the oracle budget; using local ratio instead",
            len(residual),
        )
    fallback = LocalRatioState(owner="residual_fallback")
    for edge in residual:
        lr_process(fallback, edge, reduced(edge))
    return lr_unwind(fallback.stack, Matching()), LOCAL_RATIO


def rand_arr_matching(
    session: StreamSession, params: RandArrParams = RandArrParams()
) -> Tuple[Matching, RandArrReport]:
    graph = session.graph
    meter = session.meter
    p = _resolve_sampling_rate(graph, params.p)
    prefix = math.floor(p * graph.m)
    stream = next_pass(session)

    state = LocalRatioState(meter, "local_ratio_stack")
    for _ in range(prefix):
        lr_process(state, next(stream))
    m0 = lr_unwind(state.stack, Matching())
    lr_freeze(state)
    logger.debug(
        "Phase 1 read %d edges, stacked %d, |M0| = %d, w(M0) = %d",
        prefix,
        len(state.stack),
        len(m0),
        m0.weight,
    )

    wap = wap_initialize(
        m0, derive_subseed(session.seed, "marked"), params.wap, graph.n, meter
    )
    residual: List[Edge] = []
    for edge in stream:
        if residual_filter(edge, state.potentials):
            residual.append(edge)
            charge(meter, 1, "residual_set")
        wap_feed(wap, edge)

    reduced = {edge: residual_weight(edge, state.potentials) for edge in residual}
    m_t, solver = _solve_residual(graph, residual, reduced, params.oracle_budget)
    m1 = lr_unwind(state.stack, m_t)
    m2 = wap_finalize(wap)
    if m2.weight > m1.weight:
        result, branch = m2, BRANCH_M2
    else:
        result, branch = m1, BRANCH_M1
    logger.debug(
        "|T| = %d solved by %s; w(M1) = %d, w(M2) = %d", len(residual), solver, m1.weight, m2.weight
    )

    opt_weight = None
    ratio = None
    if params.with_oracle:
        opt_weight = exact_mwm(graph, budget=params.oracle_budget).weight
        ratio = result.weight / opt_weight if opt_weight else 1.0

    report = RandArrReport(
        weight=result.weight,
        opt_weight=opt_weight,
        ratio=ratio,
        peak_edges=meter.peak,
        branch_chosen=branch,
        p_used=float(p),
        residual_solver=solver,
    )
    return result, report
