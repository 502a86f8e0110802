"""
Simulated edge streams: seeded arrival order, pass counting and memory accounting.
"""
import logging
import math
from typing import Dict, Iterator, Optional, Sequence, Tuple

from matchstream._utils.prng import fisher_yates_permutation
from matchstream.constants import DEFAULT_MEM_C, DEFAULT_MEM_LOGK
from matchstream.exceptions import BudgetViolationError, ParameterError, UsageError
from matchstream.graph import Edge, WeightedGraph

logger = logging.getLogger("matchstream.stream")


def memory_budget(n: int, c_mem: float = DEFAULT_MEM_C, k_mem: int = DEFAULT_MEM_LOGK) -> int:
    if c_mem <= 0:
        raise ParameterError(f"Memory constant must be positive, got {c_mem}.")
    if k_mem < 0:
        raise ParameterError(f"Memory log exponent must be non-negative, got {k_mem}.")
    n = max(n, 2)
    return math.ceil(c_mem * n * math.log2(n) ** k_mem)


class MemoryMeter:
    """
    Counts retained edges against ``ceil(c_mem * n * log2(n) ** k_mem)``.

    In strict mode a charge past the budget raises; in lenient mode it is only
    recorded in ``peak``.
    """

    def __init__(
        self,
        n: int,
        c_mem: float = DEFAULT_MEM_C,
        k_mem: int = DEFAULT_MEM_LOGK,
        strict: bool = False,
    ) -> None:
        self.budget = memory_budget(n, c_mem, k_mem)
        self.c_mem = c_mem
        self.k_mem = k_mem
        self.strict = strict
        self.stored_edges = 0
        self.peak = 0
        self.by_owner: Dict[str, int] = {}

    def spawn(self, n: int) -> "MemoryMeter":
        return MemoryMeter(n, self.c_mem, self.k_mem, self.strict)

    @property
    def over_budget(self) -> bool:
        return self.peak > self.budget


def charge(meter: MemoryMeter, delta: int, owner: str = "unknown") -> None:
    if delta < 0:
        raise ParameterError(f"Charges must be non-negative, got {delta}.")
    meter.stored_edges += delta
    meter.by_owner[owner] = meter.by_owner.get(owner, 0) + delta
    meter.peak = max(meter.peak, meter.stored_edges)
    if meter.strict and meter.stored_edges > meter.budget:
        raise BudgetViolationError(
            f"{owner} raised the stored edge count to {meter.stored_edges}, "
            f"over the budget of {meter.budget}."
        )


def release(meter: MemoryMeter, delta: int, owner: str = "unknown") -> None:
    if delta < 0:
        raise ParameterError(f"Releases must be non-negative, got {delta}.")
    if delta > meter.stored_edges:
        raise UsageError(
            f"{owner} released {delta} edges but only {meter.stored_edges} are stored."
        )
    meter.stored_edges -= delta
    meter.by_owner[owner] = meter.by_owner.get(owner, 0) - delta


class StreamSession:
    def __init__(
        self,
        graph: WeightedGraph,
        order: Sequence[int],
        seed: int,
        meter: Optional[MemoryMeter] = None,
    ) -> None:
        if sorted(order) != list(range(graph.m)):
            raise ParameterError("Stream order must be a permutation of the edge indices.")
        self.graph = graph
        self.order: Tuple[int, ...] = tuple(order)
        self.seed = seed
        self.pass_count = 0
        self.meter = meter if meter is not None else MemoryMeter(graph.n)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self.graph.edges[index] for index in self.order)


def make_random_order(
    graph: WeightedGraph, seed: int, meter: Optional[MemoryMeter] = None
) -> StreamSession:
    if graph.m < 1:
        raise ParameterError("A stream needs at least one edge.")
    order = fisher_yates_permutation(graph.m, seed)
    logger.debug("Seed %d ordered %d edges", seed, graph.m)
    return StreamSession(graph, order, seed, meter)


def make_fixed_order(
    graph: WeightedGraph,
    order: Optional[Sequence[int]] = None,
    meter: Optional[MemoryMeter] = None,
) -> StreamSession:
    if order is None:
        order = range(graph.m)
    return StreamSession(graph, order, 0, meter)


def next_pass(session: StreamSession) -> Iterator[Edge]:
    session.pass_count += 1
    return iter(session.edges)
