"""
Layered graphs for weighted augmentations.

A random L/R split of the vertices fixes the crossing matched edges A and the
crossing unmatched edges B. For a threshold pair ``(tau_a, tau_b)`` the layered
graph holds ``k + 1`` copies of the vertices. Layer ``t`` keeps the A edges whose
weight sits just below ``tau_a[t] * W``. Between layers ``t`` and ``t + 1`` the B
edges whose weight sits just above ``tau_b[t] * W`` run from the R copy to the L
copy. A path through every layer projects to an alternating walk in the original
graph; the walk splits into one simple path and a set of even alternating
cycles, and at least one of those has gain of at least ``g * W``.
"""
from fractions import Fraction
import logging
import math
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from eth_utils import to_tuple
import networkx as nx

from matchstream._utils.prng import SplitMix64
from matchstream.constants import LEFT, RIGHT
from matchstream.exceptions import EnumerationGuardError, ParameterError, StructuralError
from matchstream.graph import (
    EMPTY_AUGMENTATION,
    Augmentation,
    Edge,
    Matching,
    WeightedGraph,
    make_augmentation,
)

logger = logging.getLogger("matchstream.layered")

Number = Union[int, float, Fraction]

# original edge and the layer (X edges) or gap (Y edges) it was copied into
Origin = Tuple[Edge, int]


class Parametrization(NamedTuple):
    side: Dict[int, str]
    a_edges: Tuple[Edge, ...]
    b_edges: Tuple[Edge, ...]

    @classmethod
    def from_sides(
        cls, graph: WeightedGraph, matching: Matching, side: Mapping[int, str]
    ) -> "Parametrization":
        for vertex in range(graph.n):
            if side.get(vertex) not in (LEFT, RIGHT):
                raise StructuralError(f"Vertex {vertex} has no side in the bipartition.")
        a_edges = []
        b_edges = []
        for edge in sorted(graph.edges):
            if side[edge.u] == side[edge.v]:
                continue
            if edge in matching:
                a_edges.append(edge)
            else:
                b_edges.append(edge)
        return cls(dict(side), tuple(a_edges), tuple(b_edges))

    def left_end(self, edge: Edge) -> int:
        return edge.u if self.side[edge.u] == LEFT else edge.v


def random_bipartition(graph: WeightedGraph, matching: Matching, seed: int) -> Parametrization:
    rng = SplitMix64(seed)
    side = {vertex: RIGHT if rng.next_bit() else LEFT for vertex in range(graph.n)}
    return Parametrization.from_sides(graph, matching, side)


class GoodPair(NamedTuple):
    tau_a: Tuple[Fraction, ...]
    tau_b: Tuple[Fraction, ...]
    g: Fraction

    @property
    def k(self) -> int:
        return len(self.tau_b)

    @property
    def order_key(self) -> Tuple[int, Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        return (len(self.tau_a), self.tau_b, self.tau_a)

    @classmethod
    def from_units(cls, a_units: Sequence[int], b_units: Sequence[int], g: Number) -> "GoodPair":
        g = Fraction(g)
        return cls(
            tuple(unit * g for unit in a_units), tuple(unit * g for unit in b_units), g
        )


def max_pair_length(eps: Number) -> int:
    eps = Fraction(eps)
    return math.floor((2 / eps) * (16 / eps)) + 1


def default_sum_b_max(eps: Number) -> Fraction:
    return 1 + Fraction(eps) ** 4


def is_good_pair(
    tau_a: Sequence[Number],
    tau_b: Sequence[Number],
    eps: Number,
    g: Number,
    sum_b_max: Optional[Number] = None,
) -> bool:
    g = Fraction(g)
    limit = default_sum_b_max(eps) if sum_b_max is None else Fraction(sum_b_max)
    tau_a = tuple(Fraction(value) for value in tau_a)
    tau_b = tuple(Fraction(value) for value in tau_b)

    if len(tau_a) > max_pair_length(eps) or len(tau_b) != len(tau_a) - 1:
        return False
    for value in tau_a + tau_b:
        if value < 0 or (value / g).denominator != 1:
            return False
    if any(value < 2 * g for value in tau_b):
        return False
    if any(value < 2 * g for value in tau_a[1:-1]):
        return False
    if sum(tau_b) > limit:
        return False
    return sum(tau_b) - sum(tau_a) >= g


def _validate_enumeration(eps: Number, g: Number, k_max: int) -> None:
    if not 0 < Fraction(eps) < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}.")
    if Fraction(g) <= 0:
        raise ParameterError(f"Granularity must be positive, got {g}.")
    if k_max > max_pair_length(eps):
        raise ParameterError(
            f"k_max = {k_max} exceeds the longest good pair {max_pair_length(eps)} for eps={eps}."
        )


def count_good_pairs(
    eps: Number, g: Number, k_max: int, sum_b_max: Optional[Number] = None
) -> int:
    """
    Closed-form count of good pairs with ``2 <= len(tau_a) <= k_max``.

    For ``k`` gaps, tau_b sums to ``s`` units in ``comb(s - k - 1, k - 1)`` ways. The
    ``length - 2`` interior tau_a entries are at least 2 units each and the tau_a
    sum is at most ``s - 1`` units.
    """
    _validate_enumeration(eps, g, k_max)
    limit = default_sum_b_max(eps) if sum_b_max is None else Fraction(sum_b_max)
    top = math.floor(limit / Fraction(g))
    total = 0
    for length in range(2, k_max + 1):
        k = length - 1
        for sum_b in range(2 * k, top + 1):
            slack = sum_b - 1 - 2 * (length - 2)
            if slack < 0:
                continue
            total += math.comb(sum_b - k - 1, k - 1) * math.comb(slack + length, length)
    return total


def _unit_sequences(minimums: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    if not minimums:
        yield ()
        return
    head, rest = minimums[0], minimums[1:]
    for value in range(head, budget - sum(rest) + 1):
        for tail in _unit_sequences(rest, budget - value):
            yield (value,) + tail


def enumerate_good_pairs(
    eps: Number,
    g: Number,
    k_max: int,
    sum_b_max: Optional[Number] = None,
    pair_cap: Optional[int] = None,
) -> Iterator[GoodPair]:
    if pair_cap is not None:
        count = count_good_pairs(eps, g, k_max, sum_b_max)
        if count > pair_cap:
            raise EnumerationGuardError(
                f"{count} good pairs for eps={eps}, g={g}, k_max={k_max} exceed the cap of "
                f"{pair_cap}; raise the granularity or lower k_max."
            )
    else:
        _validate_enumeration(eps, g, k_max)
    g = Fraction(g)
    limit = default_sum_b_max(eps) if sum_b_max is None else Fraction(sum_b_max)
    top = math.floor(limit / g)
    return _generate_good_pairs(g, k_max, top)


def _generate_good_pairs(g: Fraction, k_max: int, top: int) -> Iterator[GoodPair]:
    for length in range(2, k_max + 1):
        b_minimums = [2] * (length - 1)
        a_minimums = [0] + [2] * (length - 2) + [0]
        for b_units in _unit_sequences(b_minimums, top):
            for a_units in _unit_sequences(a_minimums, sum(b_units) - 1):
                yield GoodPair.from_units(a_units, b_units, g)


class LayeredGraph:
    """
    Copy ``v`` of layer ``t`` (1-based) has node id ``(t - 1) * n + v``. X edges are
    stored as ``(l, r)`` inside one layer, Y edges as ``(r, l)`` from layer ``t``
    to layer ``t + 1``.
    """

    def __init__(
        self,
        n: int,
        k: int,
        nodes: Iterable[int],
        x_edges: Iterable[Tuple[int, int]],
        y_edges: Iterable[Tuple[int, int]],
        origin: Dict[Tuple[int, int], Origin],
        side: Dict[int, str],
    ) -> None:
        self.n = n
        self.k = k
        self.nodes = tuple(sorted(nodes))
        self.x_edges = tuple(x_edges)
        self.y_edges = tuple(y_edges)
        self.origin = origin
        self.side = side

    def copy_id(self, vertex: int, layer: int) -> int:
        return (layer - 1) * self.n + vertex

    def vertex_of(self, node: int) -> int:
        return node % self.n

    def layer_of(self, node: int) -> int:
        return node // self.n + 1

    def is_left(self, node: int) -> bool:
        return self.side[self.vertex_of(node)] == LEFT

    @property
    def edge_count(self) -> int:
        return len(self.x_edges) + len(self.y_edges)

    @property
    def inner_x_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(
            pair for pair in self.x_edges if 1 < self.layer_of(pair[0]) < self.k + 1
        )

    def to_networkx(self, include_boundary_x: bool = True) -> nx.Graph:
        graph = nx.Graph()
        for node in self.nodes:
            graph.add_node(node, bipartite=0 if self.is_left(node) else 1)
        x_edges = self.x_edges if include_boundary_x else self.inner_x_edges
        graph.add_edges_from(x_edges)
        graph.add_edges_from(self.y_edges)
        return graph

    def ordered_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.x_edges + self.y_edges, key=lambda pair: (min(pair), max(pair))))

    def to_text(self) -> str:
        layered = WeightedGraph(
            (self.k + 1) * self.n,
            ((a, b, 1) for a, b in self.ordered_edges()),
            weight_exponent=1,
        )
        return layered.to_text()

    def origin_text(self) -> str:
        lines = []
        for position, pair in enumerate(self.ordered_edges()):
            edge, layer = self.origin[pair]
            lines.append(f"{position} {edge.u} {edge.v} {layer}")
        return "".join(line + "\n" for line in lines)

    def __repr__(self) -> str:
        return f"LayeredGraph(k={self.k}, nodes={len(self.nodes)}, edges={self.edge_count})"


def _in_x_window(weight: int, tau: Fraction, g: Fraction, scale: Fraction) -> bool:
    return (tau - g) * scale < weight <= tau * scale


def _in_y_window(weight: int, tau: Fraction, g: Fraction, scale: Fraction) -> bool:
    return tau * scale <= weight < (tau + g) * scale


def build_layered(
    param: Parametrization, pair: GoodPair, W: Number, matching: Matching
) -> LayeredGraph:
    n = len(param.side)
    k = pair.k
    g = pair.g
    scale = Fraction(W)
    origin: Dict[Tuple[int, int], Origin] = {}

    has_x: Dict[int, Set[int]] = {}
    x_edges = []
    for layer, tau in enumerate(pair.tau_a, start=1):
        has_x[layer] = set()
        for edge in param.a_edges:
            if not _in_x_window(edge.w, tau, g, scale):
                continue
            left = param.left_end(edge)
            right = edge.other(left)
            arc = ((layer - 1) * n + left, (layer - 1) * n + right)
            x_edges.append(arc)
            origin[arc] = (edge, layer)
            has_x[layer].update(edge.endpoints)

    last = k + 1
    nodes = set()
    for layer in range(1, last + 1):
        for vertex in range(n):
            keep = vertex in has_x[layer]
            free = not matching.is_matched(vertex)
            if layer == 1 and param.side[vertex] == RIGHT:
                keep = keep or (free and pair.tau_a[0] == 0)
            elif layer == last and param.side[vertex] == LEFT:
                keep = keep or (free and pair.tau_a[-1] == 0)
            if keep:
                nodes.add((layer - 1) * n + vertex)

    y_edges = []
    for gap, tau in enumerate(pair.tau_b, start=1):
        for edge in param.b_edges:
            if not _in_y_window(edge.w, tau, g, scale):
                continue
            left = param.left_end(edge)
            right = edge.other(left)
            arc = ((gap - 1) * n + right, gap * n + left)
            if arc[0] in nodes and arc[1] in nodes:
                y_edges.append(arc)
                origin[arc] = (edge, gap)

    layered = LayeredGraph(n, k, nodes, x_edges, y_edges, origin, param.side)
    logger.debug("Built %r for tau_b=%s at W=%s", layered, pair.tau_b, W)
    return layered


@to_tuple
def augmenting_walks(
    layered: LayeredGraph, matched: Matching
) -> Iterable[Tuple[int, ...]]:
    """
    Walks of ``matched`` xor the inner X edges that start at a layer-1 R copy and
    end at a free layer-(k + 1) L copy. ``matched`` is a matching of the graph
    without first- and last-layer X edges.
    """
    inner: Dict[int, int] = {}
    for left, right in layered.inner_x_edges:
        inner[left] = right
        inner[right] = left
    last = layered.k + 1

    for start in layered.nodes:
        if layered.layer_of(start) != 1 or layered.is_left(start):
            continue
        if not matched.is_matched(start):
            continue
        walk = [start]
        current = start
        while True:
            if layered.is_left(current):
                partner = inner.get(current)
                if partner is None or matched.mate(current) == partner:
                    break
            else:
                partner = matched.mate(current)
                if partner is None or inner.get(current) == partner:
                    break
            walk.append(partner)
            current = partner
        end = walk[-1]
        if layered.is_left(end) and layered.layer_of(end) == last and end not in inner:
            yield tuple(walk)


def project_walk(layered: LayeredGraph, walk: Sequence[int]) -> Tuple[int, ...]:
    return tuple(layered.vertex_of(node) for node in walk)


def decompose_alternating_path(
    walk: Sequence[int],
    matching: Matching,
    graph: WeightedGraph,
    side: Optional[Mapping[int, str]] = None,
) -> Tuple[Augmentation, Tuple[Augmentation, ...]]:
    """
    Split an alternating walk into one simple path from its first to its last
    vertex plus simple even alternating cycles. Every walk edge lands in exactly
    one component.

    Works by loop erasure: vertices go on a stack, and revisiting a vertex cuts the
    closed stretch since its first visit off as a cycle. What is left on the stack
    is the path.

    With ``side`` given, matched steps must run L to R and unmatched steps R to L.
    """
    edges = []
    for a, b in zip(walk, walk[1:]):
        edge = graph.edge(a, b)
        if edge is None:
            raise StructuralError(f"Walk step {a} -> {b} is not an edge.")
        if edges and (edges[-1] in matching) == (edge in matching):
            raise StructuralError(f"Walk steps {edges[-1]} and {edge} do not alternate.")
        if side is not None:
            expected = (LEFT, RIGHT) if edge in matching else (RIGHT, LEFT)
            if (side[a], side[b]) != expected:
                raise StructuralError(f"Walk step {a} -> {b} runs against its orientation.")
        edges.append(edge)

    stack: List[int] = []
    position: Dict[int, int] = {}
    cycle_walks = []
    for vertex in walk:
        if vertex in position:
            start = position[vertex]
            cycle_walks.append(tuple(stack[start:]))
            for popped in stack[start + 1 :]:
                del position[popped]
            del stack[start + 1 :]
            continue
        position[vertex] = len(stack)
        stack.append(vertex)

    path = make_augmentation(graph, matching, stack) if len(stack) > 1 else EMPTY_AUGMENTATION
    cycles = tuple(
        make_augmentation(graph, matching, cycle, cycle=True) for cycle in cycle_walks
    )
    return path, cycles


def rounded_gain(aug: Augmentation, unit: Fraction) -> Fraction:
    """
    Gain with unmatched weights rounded down and neighborhood weights rounded up
    to multiples of ``unit``.
    """
    gained = sum(math.floor(edge.w / unit) for edge in aug.added_edges)
    lost = sum(math.ceil(edge.w / unit) for edge in aug.neighborhood)
    return (gained - lost) * unit


def in_augmentation_class(
    aug: Augmentation, W: Number, eps: Number, g: Optional[Number] = None
) -> bool:
    if aug.is_empty:
        return False
    eps = Fraction(eps)
    g = eps ** 12 if g is None else Fraction(g)
    scale = Fraction(W)
    unit = g * scale
    if any(not unit <= edge.w <= 2 * scale for edge in aug.edges):
        return False
    if aug.gain > 2 * scale:
        return False
    if rounded_gain(aug, unit) < unit:
        return False
    return len(aug.vertices) <= 64 / eps ** 2 + 1
