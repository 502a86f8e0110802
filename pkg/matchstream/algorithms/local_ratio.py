import logging
from typing import List, NamedTuple, Optional, Sequence

from matchstream.exceptions import UsageError
from matchstream.graph import Edge, Matching, VertexPotentials
from matchstream.stream import MemoryMeter, charge

logger = logging.getLogger("matchstream.local_ratio")


class StackEntry(NamedTuple):
    edge: Edge
    residual: int


class LocalRatioState:
    """
    Local-ratio stack with vertex potentials. Once frozen, neither the stack nor
    the potentials change.
    """

    def __init__(self, meter: Optional[MemoryMeter] = None, owner: str = "local_ratio") -> None:
        self.stack: List[StackEntry] = []
        self.potentials = VertexPotentials()
        self.meter = meter
        self.owner = owner

    @property
    def frozen(self) -> bool:
        return self.potentials.frozen


def lr_process(state: LocalRatioState, edge: Edge, weight: Optional[int] = None) -> bool:
    """
    Push ``edge`` if its weight beats the potentials of its endpoints. ``weight``
    overrides ``edge.w`` (the excess-weight instance feeds w').
    """
    if state.frozen:
        raise UsageError("Cannot process edges after the potentials are frozen.")
    value = edge.w if weight is None else weight
    residual = value - state.potentials[edge.u] - state.potentials[edge.v]
    if residual <= 0:
        return False
    state.stack.append(StackEntry(edge, residual))
    state.potentials.raise_by(edge.u, residual)
    state.potentials.raise_by(edge.v, residual)
    if state.meter is not None:
        charge(state.meter, 1, state.owner)
    return True


def lr_freeze(state: LocalRatioState) -> None:
    if not state.frozen:
        logger.debug("Freezing potentials over a stack of %d edges", len(state.stack))
    state.potentials.freeze()


def lr_unwind(stack: Sequence[StackEntry], base: Matching) -> Matching:
    result = base.copy()
    for entry in reversed(stack):
        if result.can_add(entry.edge):
            result.add(entry.edge)
    return result


def residual_filter(edge: Edge, potentials: VertexPotentials) -> bool:
    if not potentials.frozen:
        raise UsageError("The residual filter reads frozen potentials only.")
    return edge.w > potentials[edge.u] + potentials[edge.v]


def residual_weight(edge: Edge, potentials: VertexPotentials) -> int:
    return edge.w - potentials[edge.u] - potentials[edge.v]
