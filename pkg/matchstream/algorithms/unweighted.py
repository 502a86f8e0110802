"""
The UnwAugPath streaming black box and the single-pass unweighted
random-arrival pipeline built on top of it.
"""
from fractions import Fraction
import logging
import math
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import networkx as nx

from matchstream.algorithms.oracles import exact_mcm_bipartite
from matchstream.constants import DEFAULT_UNWEIGHTED_BETA, UNWAUGPATH_LAMBDA_FACTOR
from matchstream.exceptions import ParameterError
from matchstream.graph import Edge, Matching, WeightedGraph
from matchstream.stream import MemoryMeter, StreamSession, charge, next_pass

logger = logging.getLogger("matchstream.unweighted")

Number = Union[int, float, Fraction]


class ThreeAugmentingPath(NamedTuple):
    """
    a - u = v - b with ``middle`` = uv matched and ``left`` = au, ``right`` = vb.
    """

    a: int
    u: int
    v: int
    b: int
    left: Edge
    middle: Edge
    right: Edge

    @property
    def vertices(self) -> Tuple[int, int, int, int]:
        return (self.a, self.u, self.v, self.b)


class SupportSet:
    def __init__(self, lam: int) -> None:
        self.lam = lam
        self.edges: List[Edge] = []
        self.deg_unmatched: Dict[int, int] = {}
        self.deg_matched: Dict[int, int] = {}
        self.by_matched: Dict[int, List[Edge]] = {}

    def __len__(self) -> int:
        return len(self.edges)


class UnwAugPathState:
    def __init__(
        self, matching: Matching, beta: Number, meter: Optional[MemoryMeter], owner: str
    ) -> None:
        self.matching = matching
        self.beta = beta
        self.support = SupportSet(math.ceil(UNWAUGPATH_LAMBDA_FACTOR / Fraction(beta)))
        self.meter = meter
        self.owner = owner


def unw_init(
    matching: Matching,
    beta: Number,
    meter: Optional[MemoryMeter] = None,
    owner: str = "unw_aug_path",
) -> UnwAugPathState:
    if beta <= 0 or beta > 1:
        raise ParameterError(f"beta must lie in (0, 1], got {beta}.")
    return UnwAugPathState(matching, beta, meter, owner)


def unw_feed(state: UnwAugPathState, edge: Edge) -> bool:
    u_matched = state.matching.is_matched(edge.u)
    v_matched = state.matching.is_matched(edge.v)
    if u_matched == v_matched:
        return False
    free, matched = (edge.v, edge.u) if u_matched else (edge.u, edge.v)
    support = state.support
    if support.deg_unmatched.get(free, 0) >= support.lam:
        return False
    if support.deg_matched.get(matched, 0) >= 2:
        return False
    support.edges.append(edge)
    support.deg_unmatched[free] = support.deg_unmatched.get(free, 0) + 1
    support.deg_matched[matched] = support.deg_matched.get(matched, 0) + 1
    support.by_matched.setdefault(matched, []).append(edge)
    if state.meter is not None:
        charge(state.meter, 1, state.owner)
    return True


def unw_finalize(state: UnwAugPathState) -> Tuple[ThreeAugmentingPath, ...]:
    """
    Greedily extend support edges, in insertion order, to vertex-disjoint
    3-augmenting paths.
    """
    matching = state.matching
    used = set()
    paths = []
    for edge in state.support.edges:
        u = edge.u if matching.is_matched(edge.u) else edge.v
        a = edge.other(u)
        middle = matching.at(u)
        v = middle.other(u)
        if used.intersection((a, u, v)):
            continue
        for right in state.support.by_matched.get(v, ()):
            b = right.other(v)
            if b == a or b in used:
                continue
            paths.append(ThreeAugmentingPath(a, u, v, b, edge, middle, right))
            used.update((a, u, v, b))
            break
    logger.debug("%s recovered %d 3-augmenting paths", state.owner, len(paths))
    return tuple(paths)


def apply_three_augmentations(
    matching: Matching, paths: Tuple[ThreeAugmentingPath, ...]
) -> Matching:
    result = matching.copy()
    for path in paths:
        result.remove(path.middle)
        result.add(path.left)
        result.add(path.right)
    return result


def greedy_extend(matching: Matching, edge: Edge) -> bool:
    if matching.can_add(edge):
        matching.add(edge)
        return True
    return False


def maximum_cardinality_matching(graph: WeightedGraph) -> Matching:
    """
    Exact maximum-cardinality matching on the graph's own edges.
    """
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(graph.support)
    nx_graph.add_edges_from(edge.endpoints for edge in sorted(graph.edges))
    if nx.is_bipartite(nx_graph):
        unit = exact_mcm_bipartite(nx_graph)
        pairs = [(edge.u, edge.v) for edge in unit]
    else:
        pairs = nx.max_weight_matching(nx_graph, maxcardinality=True)
    return Matching(graph.edge(u, v) for u, v in sorted(pairs))  # type: ignore


def random_arrival_unweighted(
    session: StreamSession, p: Number, beta: Number = DEFAULT_UNWEIGHTED_BETA
) -> Matching:
    """
    One pass: greedy maximal M0 on the first p fraction, then three branches on the
    rest of the stream. The largest of the three matchings is returned.
    """
    if not 0 < p < 1:
        raise ParameterError(f"Sampling rate p must lie in (0, 1), got {p}.")
    graph = session.graph
    meter = session.meter
    prefix = math.floor(Fraction(p) * graph.m)
    stream = next_pass(session)

    m0 = Matching()
    for _ in range(prefix):
        edge = next(stream)
        if greedy_extend(m0, edge):
            charge(meter, 1, "greedy_prefix")
    logger.debug("Prefix of %d edges gave |M0| = %d", prefix, len(m0))

    free_edges: List[Edge] = []
    grown = m0.copy()
    augmenter = unw_init(m0, beta, meter, "unw_aug_path")
    for edge in stream:
        if not m0.is_matched(edge.u) and not m0.is_matched(edge.v):
            free_edges.append(edge)
            charge(meter, 1, "free_vertex_store")
        if greedy_extend(grown, edge):
            charge(meter, 1, "greedy_growth")
        unw_feed(augmenter, edge)

    patched = m0.copy()
    for edge in maximum_cardinality_matching(graph.subgraph(free_edges)):
        patched.add(edge)
    augmented = apply_three_augmentations(m0, unw_finalize(augmenter))

    branches = (patched, grown, augmented)
    best = max(branches, key=len)
    logger.debug(
        "Branch sizes %s, free-vertex store %d edges",
        tuple(len(branch) for branch in branches),
        len(free_edges),
    )
    return best
