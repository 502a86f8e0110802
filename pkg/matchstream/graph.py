"""
Core graph, matching and augmentation types shared by every algorithm.
"""
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from eth_utils import to_tuple
import networkx as nx

from matchstream.constants import DEFAULT_WEIGHT_EXPONENT, MAX_INT64
from matchstream.exceptions import StructuralError, UsageError, ValidationError

PATH = "path"
CYCLE = "cycle"


class Edge(NamedTuple):
    u: int
    v: int
    w: int

    @property
    def endpoints(self) -> Tuple[int, int]:
        return (self.u, self.v)

    def other(self, vertex: int) -> int:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise StructuralError(f"Vertex {vertex} is not an endpoint of {self}.")


# w(M(v)) for an unmatched vertex v
ZERO_EDGE = Edge(-1, -1, 0)


def make_edge(u: int, v: int, w: int) -> Edge:
    if u < v:
        return Edge(u, v, w)
    return Edge(v, u, w)


class WeightedGraph:
    """
    Immutable vertex/edge store. Vertices are ``0..n-1``, weights are positive
    integers bounded by ``n ** weight_exponent`` and at most one edge joins any pair.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int, int]],
        weight_exponent: int = DEFAULT_WEIGHT_EXPONENT,
    ) -> None:
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"Vertex count must be a positive integer, got {n}.")
        self.n = n
        self.weight_exponent = weight_exponent
        self.max_allowed_weight = max(n, 2) ** weight_exponent
        index: Dict[Tuple[int, int], Edge] = {}
        ordered: List[Edge] = []
        for raw in edges:
            edge = self._validate_edge(*raw)
            if (edge.u, edge.v) in index:
                raise ValidationError(f"Parallel edge between {edge.u} and {edge.v}.")
            index[(edge.u, edge.v)] = edge
            ordered.append(edge)
        total = sum(edge.w for edge in ordered)
        if total > MAX_INT64:
            raise ValidationError(f"Total edge weight {total} overflows 64-bit matching weights.")
        self.edges: Tuple[Edge, ...] = tuple(ordered)
        self._index = index
        self._adjacency: Optional[Dict[int, Tuple[Edge, ...]]] = None

    def _validate_edge(self, u: int, v: int, w: int) -> Edge:
        for value in (u, v, w):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"Edge fields must be integers, got {(u, v, w)}.")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValidationError(f"Edge {(u, v)} leaves the vertex range 0..{self.n - 1}.")
        if u == v:
            raise ValidationError(f"Self-loop at vertex {u}.")
        if not 1 <= w <= self.max_allowed_weight:
            raise ValidationError(
                f"Weight {w} of edge {(u, v)} is outside [1, {self.max_allowed_weight}]."
            )
        return make_edge(u, v, w)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_weight(self) -> int:
        return max((edge.w for edge in self.edges), default=0)

    def edge(self, u: int, v: int) -> Optional[Edge]:
        return self._index.get((min(u, v), max(u, v)))

    @property
    def adjacency(self) -> Dict[int, Tuple[Edge, ...]]:
        if self._adjacency is None:
            incident: Dict[int, List[Edge]] = {vertex: [] for vertex in range(self.n)}
            for edge in self.edges:
                incident[edge.u].append(edge)
                incident[edge.v].append(edge)
            self._adjacency = {
                vertex: tuple(sorted(edges, key=lambda e: (e.other(vertex), e.w)))
                for vertex, edges in incident.items()
            }
        return self._adjacency

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted({vertex for edge in self.edges for vertex in edge.endpoints}))

    def subgraph(self, edges: Iterable[Edge]) -> "WeightedGraph":
        return WeightedGraph(self.n, edges, self.weight_exponent)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, weight=edge.w)
        return graph

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{edge.u} {edge.v} {edge.w}" for edge in self.edges)
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def parse_graph_text(text: str, weight_exponent: int = DEFAULT_WEIGHT_EXPONENT) -> WeightedGraph:
    if "\r" in text:
        raise ValidationError("Graph files must use LF line endings.")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if not lines:
        raise ValidationError("Graph file is empty.")
    header = _parse_int_fields(lines[0], 2, 1)
    n, m = header
    body = lines[1:]
    if len(body) != m:
        raise ValidationError(f"Header declares {m} edges but {len(body)} edge lines follow.")
    edges = [_parse_int_fields(line, 3, number) for number, line in enumerate(body, start=2)]
    return WeightedGraph(n, edges, weight_exponent)


def _parse_int_fields(line: str, count: int, line_number: int) -> Tuple[int, ...]:
    fields = line.split()
    if len(fields) != count:
        raise ValidationError(
            f"Line {line_number}: expected {count} fields, found {len(fields)}: {line!r}."
        )
    try:
        return tuple(int(field, 10) for field in fields)
    except ValueError:
        raise ValidationError(f"Line {line_number}: non-decimal field in {line!r}.")


def read_graph_file(path: Path, weight_exponent: int = DEFAULT_WEIGHT_EXPONENT) -> WeightedGraph:
    if not path.is_file():
        raise ValidationError(f"Graph file: {path} does not exist.")
    return parse_graph_text(path.read_text(), weight_exponent)


class Matching:
    """
    Vertex-disjoint edge set with per-vertex lookup and a cached total weight.
    ``at(v)`` reports ``ZERO_EDGE`` for an unmatched vertex.
    """

    def __init__(self, edges: Iterable[Edge] = ()) -> None:
        self._mates: Dict[int, Edge] = {}
        self._weight = 0
        self._frozen = False
        for edge in edges:
            self.add(edge)

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def frozen(self) -> bool:
        return self._frozen

    def add(self, edge: Edge) -> None:
        self._check_mutable()
        if edge.u in self._mates or edge.v in self._mates:
            raise StructuralError(f"Adding {edge} would share a vertex with the matching.")
        self._mates[edge.u] = edge
        self._mates[edge.v] = edge
        self._weight += edge.w

    def remove(self, edge: Edge) -> None:
        self._check_mutable()
        if self._mates.get(edge.u) != edge:
            raise StructuralError(f"{edge} is not in the matching.")
        del self._mates[edge.u]
        del self._mates[edge.v]
        self._weight -= edge.w

    def _check_mutable(self) -> None:
        if self._frozen:
            raise UsageError("Frozen matchings cannot be modified.")

    def freeze(self) -> "Matching":
        self._frozen = True
        return self

    def copy(self) -> "Matching":
        return Matching(self.edges)

    def at(self, vertex: int) -> Edge:
        return self._mates.get(vertex, ZERO_EDGE)

    def mate(self, vertex: int) -> Optional[int]:
        edge = self._mates.get(vertex)
        if edge is None:
            return None
        return edge.other(vertex)

    def is_matched(self, vertex: int) -> bool:
        return vertex in self._mates

    def can_add(self, edge: Edge) -> bool:
        return edge.u not in self._mates and edge.v not in self._mates

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self._mates)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(set(self._mates.values())))

    def recompute_weight(self) -> int:
        return sum(edge.w for edge in self.edges)

    def __contains__(self, edge: object) -> bool:
        return isinstance(edge, Edge) and self._mates.get(edge.u) == edge

    def __len__(self) -> int:
        return len(self._mates) // 2

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.edges == other.edges

    def __repr__(self) -> str:
        return f"Matching(size={len(self)}, weight={self.weight})"


class VertexPotentials:
    """
    Local-ratio credit per vertex. Entries start at 0 and only ever increase.
    """

    def __init__(self) -> None:
        self._alpha: Dict[int, int] = {}
        self.frozen = False

    def __getitem__(self, vertex: int) -> int:
        return self._alpha.get(vertex, 0)

    def raise_by(self, vertex: int, amount: int) -> None:
        if self.frozen:
            raise UsageError("Vertex potentials are frozen.")
        if amount < 0:
            raise UsageError(f"Potentials only increase, got a change of {amount}.")
        self._alpha[vertex] = self[vertex] + amount

    def freeze(self) -> None:
        self.frozen = True

    def total(self) -> int:
        return sum(self._alpha.values())


class Augmentation(NamedTuple):
    kind: str
    # a cycle lists each vertex once; the closing edge joins the last to the first
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    neighborhood: Tuple[Edge, ...]
    gain: int

    @property
    def is_empty(self) -> bool:
        return not self.edges

    @property
    def added_edges(self) -> Tuple[Edge, ...]:
        removed = set(self.neighborhood)
        return tuple(edge for edge in self.edges if edge not in removed)

    @property
    def footprint(self) -> FrozenSet[int]:
        touched = set(self.vertices)
        for edge in self.neighborhood:
            touched.update(edge.endpoints)
        return frozenset(touched)


EMPTY_AUGMENTATION = Augmentation(PATH, (), (), (), 0)


def make_augmentation(
    graph: WeightedGraph, matching: Matching, walk: Sequence[int], cycle: bool = False
) -> Augmentation:
    """
    Build the augmentation following ``walk`` through ``graph``. For a cycle the
    walk lists each vertex once.
    """
    walk = tuple(walk)
    if len(walk) < 2 and not cycle:
        return EMPTY_AUGMENTATION
    if len(set(walk)) != len(walk):
        raise StructuralError(f"Augmentation walk {walk} repeats a vertex.")
    pairs = list(zip(walk, walk[1:]))
    if cycle:
        if len(walk) < 4 or len(walk) % 2:
            raise StructuralError(f"Alternating cycles have even length >= 4, got {walk}.")
        pairs.append((walk[-1], walk[0]))
    edges = []
    for a, b in pairs:
        edge = graph.edge(a, b)
        if edge is None:
            raise StructuralError(f"No edge between {a} and {b}.")
        edges.append(edge)
    return build_augmentation(CYCLE if cycle else PATH, walk, tuple(edges), matching)


def build_augmentation(
    kind: str, vertices: Tuple[int, ...], edges: Tuple[Edge, ...], matching: Matching
) -> Augmentation:
    _validate_alternation(kind, edges, matching)
    neighborhood = _matching_neighborhood(vertices, matching)
    gain = sum(edge.w for edge in edges if edge not in matching) - sum(
        edge.w for edge in neighborhood
    )
    vertices, edges = _canonical_walk(kind, vertices, edges)
    return Augmentation(kind, vertices, edges, neighborhood, gain)


def _validate_alternation(kind: str, edges: Sequence[Edge], matching: Matching) -> None:
    flags = [edge in matching for edge in edges]
    for position in range(1, len(flags)):
        if flags[position] == flags[position - 1]:
            raise StructuralError(
                f"Edges {edges[position - 1]} and {edges[position]} do not alternate."
            )
    if kind == CYCLE and flags and flags[0] == flags[-1]:
        raise StructuralError("Cycle does not alternate across its closing edge.")


def _matching_neighborhood(vertices: Iterable[int], matching: Matching) -> Tuple[Edge, ...]:
    return tuple(sorted({matching.at(v) for v in vertices if matching.is_matched(v)}))


def _canonical_walk(
    kind: str, vertices: Tuple[int, ...], edges: Tuple[Edge, ...]
) -> Tuple[Tuple[int, ...], Tuple[Edge, ...]]:
    if kind == PATH:
        if vertices[-1] < vertices[0]:
            return tuple(reversed(vertices)), tuple(reversed(edges))
        return vertices, edges
    lookup = {frozenset(edge.endpoints): edge for edge in edges}
    size = len(vertices)
    start = vertices.index(min(vertices))
    forward = vertices[(start + 1) % size]
    backward = vertices[(start - 1) % size]
    step = 1 if forward < backward else -1
    ordered = tuple(vertices[(start + step * offset) % size] for offset in range(size))
    closed = ordered + (ordered[0],)
    return ordered, tuple(lookup[frozenset(pair)] for pair in zip(closed, closed[1:]))


def gain(aug: Augmentation, matching: Matching) -> int:
    """
    Weight change from applying ``aug`` to ``matching``: w(aug \\ M) - w(N_M(aug)).
    """
    _validate_alternation(aug.kind, aug.edges, matching)
    neighborhood = _matching_neighborhood(aug.vertices, matching)
    return sum(edge.w for edge in aug.edges if edge not in matching) - sum(
        edge.w for edge in neighborhood
    )


def apply_augmentation(matching: Matching, aug: Augmentation) -> Matching:
    removed = set(aug.neighborhood)
    result = matching.copy()
    for edge in aug.edges:
        if edge in matching and edge not in removed:
            raise StructuralError(f"Matched edge {edge} is missing from the neighborhood.")
    for edge in aug.neighborhood:
        if edge not in result:
            raise StructuralError(f"Neighborhood edge {edge} is not in the matching.")
        result.remove(edge)
    for edge in aug.edges:
        if edge not in removed:
            result.add(edge)
    return result


@to_tuple
def _walk_component(
    start: int, adjacency: Dict[int, List[Edge]], visited: Set[Edge]
) -> Iterable[Tuple[int, Edge]]:
    current = start
    while True:
        fresh = [edge for edge in adjacency[current] if edge not in visited]
        if not fresh:
            return
        edge = fresh[0]
        visited.add(edge)
        current = edge.other(current)
        yield current, edge


def symmetric_difference_augmentations(
    matching: Matching, other: Matching
) -> Tuple[Augmentation, ...]:
    """
    Decompose M xor M' into its alternating paths and cycles, built w.r.t. ``matching``.
    """
    difference = set(matching.edges) ^ set(other.edges)
    adjacency: Dict[int, List[Edge]] = {}
    for edge in sorted(difference):
        adjacency.setdefault(edge.u, []).append(edge)
        adjacency.setdefault(edge.v, []).append(edge)
    visited: Set[Edge] = set()
    components = []
    path_starts = sorted(v for v, edges in adjacency.items() if len(edges) == 1)
    for start in path_starts:
        if adjacency[start][0] in visited:
            continue
        steps = _walk_component(start, adjacency, visited)
        vertices = (start,) + tuple(vertex for vertex, _ in steps)
        edges = tuple(edge for _, edge in steps)
        components.append(build_augmentation(PATH, vertices, edges, matching))
    for start in sorted(adjacency):
        if all(edge in visited for edge in adjacency[start]):
            continue
        steps = _walk_component(start, adjacency, visited)
        vertices = (start,) + tuple(vertex for vertex, _ in steps[:-1])
        edges = tuple(edge for _, edge in steps)
        components.append(build_augmentation(CYCLE, vertices, edges, matching))
    return tuple(sorted(components))
