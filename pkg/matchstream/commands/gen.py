import logging
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

from eth_utils import to_tuple

from matchstream._utils.prng import SplitMix64
from matchstream.constants import DEFAULT_WEIGHT_EXPONENT
from matchstream.exceptions import ParameterError
from matchstream.graph import Matching, WeightedGraph

logger = logging.getLogger("matchstream.gen")

ERDOS_RENYI = "erdos_renyi"
TIGHT_HALF = "tight_half"
CYCLE_FAMILY = "cycle_family"
WEIGHT_CLASSES = "weight_classes"

DEFAULT_WEIGHT_MAX = 100

RawEdge = Tuple[int, int, int]


class GeneratorSpec(NamedTuple):
    family: str
    n: int
    m: int = 0
    weight_max: Optional[int] = None
    seed: int = 0

    @property
    def resolved_weight_max(self) -> int:
        if self.weight_max is not None:
            return self.weight_max
        return min(DEFAULT_WEIGHT_MAX, max(self.n, 2) ** DEFAULT_WEIGHT_EXPONENT)


def _validate_spec(spec: GeneratorSpec) -> None:
    if spec.family not in GENERATORS:
        raise ParameterError(
            f"Unknown family {spec.family!r}; choose one of {sorted(GENERATORS)}."
        )
    if spec.n < 2:
        raise ParameterError(f"Generated graphs need n >= 2, got {spec.n}.")
    if not 0 <= spec.m <= spec.n * (spec.n - 1) // 2:
        raise ParameterError(
            f"m = {spec.m} is infeasible for n = {spec.n} (at most {spec.n * (spec.n - 1) // 2})."
        )
    ceiling = max(spec.n, 2) ** DEFAULT_WEIGHT_EXPONENT
    if not 1 <= spec.resolved_weight_max <= ceiling:
        raise ParameterError(
            f"weight_max = {spec.resolved_weight_max} is outside [1, {ceiling}] for n = {spec.n}."
        )


def _random_pairs(n: int, m: int, rng: SplitMix64) -> List[Tuple[int, int]]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    return sorted(pairs[:m])


@to_tuple
def erdos_renyi(spec: GeneratorSpec) -> Iterable[RawEdge]:
    rng = SplitMix64(spec.seed)
    for u, v in _random_pairs(spec.n, spec.m, rng):
        yield u, v, 1 + rng.next_below(spec.resolved_weight_max)


@to_tuple
def weight_classes(spec: GeneratorSpec) -> Iterable[RawEdge]:
    rng = SplitMix64(spec.seed)
    top_class = spec.resolved_weight_max.bit_length() - 1
    for u, v in _random_pairs(spec.n, spec.m, rng):
        yield u, v, 1 << rng.next_below(top_class + 1)


@to_tuple
def tight_half(spec: GeneratorSpec) -> Iterable[RawEdge]:
    """
    Disjoint 3-edge paths with equal weights. The middle edge joins the two lowest
    labels of its block, so the endpoint tie-break of weighted greedy takes it first
    and greedy ends at exactly half of the optimum.
    """
    h = spec.resolved_weight_max
    for block in range(spec.n // 4):
        b, c, a, d = range(4 * block, 4 * block + 4)
        yield a, b, h
        yield b, c, h
        yield c, d, h


@to_tuple
def cycle_family(spec: GeneratorSpec) -> Iterable[RawEdge]:
    """
    4-cycles weighted (3, 4, 3, 4), consecutive cycles joined by a weight-1 edge.
    """
    blocks = spec.n // 4
    for block in range(blocks):
        x0, x1, x2, x3 = range(4 * block, 4 * block + 4)
        yield x0, x1, 3
        yield x1, x2, 4
        yield x2, x3, 3
        yield x0, x3, 4
        if block + 1 < blocks:
            yield x3, x3 + 1, 1


GENERATORS: Dict[str, Callable[[GeneratorSpec], Tuple[RawEdge, ...]]] = {
    ERDOS_RENYI: erdos_renyi,
    TIGHT_HALF: tight_half,
    CYCLE_FAMILY: cycle_family,
    WEIGHT_CLASSES: weight_classes,
}


def generate_graph(spec: GeneratorSpec) -> WeightedGraph:
    _validate_spec(spec)
    graph = WeightedGraph(spec.n, GENERATORS[spec.family](spec))
    logger.debug("Generated %s graph with n=%d, m=%d", spec.family, graph.n, graph.m)
    return graph


def greedy_matching(graph: WeightedGraph) -> Matching:
    """
    Weighted greedy: heaviest edges first, ties broken by endpoints.
    """
    matching = Matching()
    for edge in sorted(graph.edges, key=lambda edge: (-edge.w, edge.u, edge.v)):
        if matching.can_add(edge):
            matching.add(edge)
    return matching
