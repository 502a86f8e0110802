"""
Exact desk-scale solvers: maximum-weight matching by memoized branching,
maximum-cardinality bipartite matching by Hopcroft-Karp, and the short
augmentation search behind the short-augmentation bound.
"""
import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Set, Tuple

import networkx as nx

from matchstream.constants import ORACLE_MAX_EDGES, ORACLE_MAX_VERTICES
from matchstream.exceptions import OracleOversizeError, StructuralError
from matchstream.graph import (
    CYCLE,
    PATH,
    Edge,
    Matching,
    WeightedGraph,
    build_augmentation,
    make_edge,
)

logger = logging.getLogger("matchstream.oracles")

WeightFn = Callable[[Edge], int]


class OracleBudget(NamedTuple):
    max_vertices: int = ORACLE_MAX_VERTICES
    max_edges: int = ORACLE_MAX_EDGES


def _check_budget(vertex_count: int, edge_count: int, budget: OracleBudget) -> None:
    if vertex_count > budget.max_vertices or edge_count > budget.max_edges:
        raise OracleOversizeError(
            f"Instance with {vertex_count} vertices and {edge_count} edges exceeds the "
            f"oracle budget of {budget.max_vertices} vertices and {budget.max_edges} edges."
        )


def exact_mwm(
    graph: WeightedGraph,
    weight_fn: Optional[WeightFn] = None,
    budget: OracleBudget = OracleBudget(),
) -> Matching:
    """
    Maximum-weight matching under ``weight_fn`` (defaults to the edge weight).

    Branches on the remaining vertex of highest degree: either the vertex stays
    unmatched or one of its edges is taken. Results are memoized on the remaining
    vertex set. Among optima the lexicographically smallest sorted edge tuple wins.
    """
    if weight_fn is None:
        weight_fn = _edge_weight
    candidates = [edge for edge in graph.edges if weight_fn(edge) > 0]
    vertices = sorted({vertex for edge in candidates for vertex in edge.endpoints})
    _check_budget(len(vertices), len(candidates), budget)

    bit = {vertex: 1 << position for position, vertex in enumerate(vertices)}
    incident: Dict[int, List[Tuple[Edge, int]]] = {vertex: [] for vertex in vertices}
    for edge in sorted(candidates):
        value = weight_fn(edge)
        incident[edge.u].append((edge, value))
        incident[edge.v].append((edge, value))

    memo: Dict[int, Tuple[int, Tuple[Edge, ...]]] = {}

    def best(remaining: int) -> Tuple[int, Tuple[Edge, ...]]:
        if remaining in memo:
            return memo[remaining]
        pivot = None
        pivot_degree = 0
        for vertex in vertices:
            if not remaining & bit[vertex]:
                continue
            degree = sum(
                1 for edge, _ in incident[vertex] if remaining & bit[edge.other(vertex)]
            )
            if degree > pivot_degree:
                pivot, pivot_degree = vertex, degree
        if pivot is None:
            memo[remaining] = (0, ())
            return memo[remaining]
        result = best(remaining & ~bit[pivot])
        for edge, value in incident[pivot]:
            mate = edge.other(pivot)
            if not remaining & bit[mate]:
                continue
            sub_weight, sub_edges = best(remaining & ~bit[pivot] & ~bit[mate])
            option = (sub_weight + value, tuple(sorted(sub_edges + (edge,))))
            if option[0] > result[0] or (option[0] == result[0] and option[1] < result[1]):
                result = option
        memo[remaining] = result
        return result

    full = 0
    for flag in bit.values():
        full |= flag
    _, edges = best(full)
    logger.debug("Exact matching explored %d vertex subsets", len(memo))
    return Matching(edges)


def _edge_weight(edge: Edge) -> int:
    return edge.w


def color_bipartite(graph: nx.Graph) -> None:
    """
    Store a two-coloring in the ``bipartite`` node attribute if none is present.
    """
    if all("bipartite" in data for _, data in graph.nodes(data=True)):
        return
    try:
        coloring = nx.bipartite.color(graph)
    except nx.NetworkXError:
        raise StructuralError("Graph is not bipartite.")
    nx.set_node_attributes(graph, coloring, "bipartite")


def exact_mcm_bipartite(graph: nx.Graph) -> Matching:
    """
    Maximum-cardinality matching of a bipartite graph with integer nodes. Nodes
    carry their side in the ``bipartite`` attribute (0 or 1); a missing coloring is
    computed. Matched edges are reported with unit weight.
    """
    color_bipartite(graph)
    sides = nx.get_node_attributes(graph, "bipartite")
    for node, side in sides.items():
        if side not in (0, 1):
            raise StructuralError(f"Node {node} has side {side!r}, expected 0 or 1.")
    for u, v in graph.edges():
        if sides[u] == sides[v]:
            raise StructuralError(f"Edge {(u, v)} does not cross the two-coloring.")
    left = sorted(node for node in graph.nodes() if sides[node] == 0)
    pairs = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return Matching(make_edge(node, pairs[node], 1) for node in left if node in pairs)


def has_short_augmentation(
    graph: WeightedGraph,
    matching: Matching,
    ell: int,
    budget: OracleBudget = OracleBudget(),
) -> bool:
    """
    Whether some alternating path or cycle with at most ``2 * ell - 1`` edges has
    positive gain with respect to ``matching``.
    """
    if ell < 1:
        return False
    _check_budget(len(graph.support), graph.m, budget)
    max_edges = 2 * ell - 1
    adjacency = graph.adjacency

    def positive(kind: str, walk: List[int], edges: List[Edge]) -> bool:
        candidate = build_augmentation(kind, tuple(walk), tuple(edges), matching)
        return candidate.gain > 0

    def extend(walk: List[int], on_walk: Set[int], edges: List[Edge]) -> bool:
        if len(edges) == max_edges:
            return False
        current = walk[-1]
        for edge in adjacency[current]:
            matched = edge in matching
            if edges and (edges[-1] in matching) == matched:
                continue
            nxt = edge.other(current)
            if nxt == walk[0]:
                closes = len(edges) + 1
                if closes >= 4 and closes % 2 == 0 and (edges[0] in matching) != matched:
                    if positive(CYCLE, walk, edges + [edge]):
                        return True
                continue
            if nxt in on_walk:
                continue
            walk.append(nxt)
            on_walk.add(nxt)
            edges.append(edge)
            if positive(PATH, walk, edges) or extend(walk, on_walk, edges):
                return True
            walk.pop()
            on_walk.discard(nxt)
            edges.pop()
        return False

    for start in graph.support:
        if extend([start], {start}, []):
            return True
    return False
