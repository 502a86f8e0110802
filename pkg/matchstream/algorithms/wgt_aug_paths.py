"""
Weighted 3-augmentations through unweighted black boxes.

The initial matching M0 is split into weight classes ``[2 ** (j - 1), 2 ** j)``.
Each M0 edge is marked with probability one half. An edge whose matched
neighbors are exactly one marked and one unmarked edge, and which is heavy enough
against them, is fed unweighted to the class of the marked edge. That class runs
an UnwAugPath instance over its marked edges, so every recovered path has a
marked middle edge. Edges heavier than both matched neighbors together feed a
local-ratio matching on their excess weight instead.
"""
from fractions import Fraction
import logging
import math
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple, Union

from matchstream._utils.prng import SplitMix64
from matchstream.algorithms.local_ratio import LocalRatioState, lr_process, lr_unwind
from matchstream.algorithms.unweighted import (
    ThreeAugmentingPath,
    UnwAugPathState,
    unw_feed,
    unw_finalize,
    unw_init,
)
from matchstream.constants import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    SMALL_CLASS_FACTOR,
    SMALL_CLASS_STORE_FACTOR,
)
from matchstream.exceptions import InvariantViolation, ParameterError
from matchstream.graph import ZERO_EDGE, Edge, Matching
from matchstream.stream import MemoryMeter, charge

logger = logging.getLogger("matchstream.wgt_aug_paths")

Number = Union[int, float, Fraction]


class WapParams(NamedTuple):
    alpha: Fraction
    beta: Fraction
    small_class_threshold: int

    @classmethod
    def build(
        cls,
        alpha: Number = DEFAULT_ALPHA,
        beta: Number = DEFAULT_BETA,
        small_class_threshold: Optional[int] = None,
    ) -> "WapParams":
        alpha = Fraction(alpha)
        beta = Fraction(beta)
        if not 0 < alpha < 1:
            raise ParameterError(f"alpha must lie in (0, 1), got {alpha}.")
        if not 0 < beta < 1:
            raise ParameterError(f"beta must lie in (0, 1), got {beta}.")
        if small_class_threshold is None:
            small_class_threshold = math.ceil(SMALL_CLASS_FACTOR / beta)
        elif small_class_threshold < 0:
            raise ParameterError(
                f"Small class threshold must be non-negative, got {small_class_threshold}."
            )
        return cls(alpha, beta, small_class_threshold)


class WapState:
    def __init__(
        self,
        m0: Matching,
        marked: FrozenSet[Edge],
        params: WapParams,
        n: int,
        meter: Optional[MemoryMeter],
    ) -> None:
        self.m0 = m0
        self.marked = marked
        self.params = params
        self.meter = meter
        self.classes: Dict[int, UnwAugPathState] = {}
        self.small_classes: Set[int] = set()
        self.small_class_store: Dict[int, List[Edge]] = {}
        self.store_cap = SMALL_CLASS_STORE_FACTOR * params.small_class_threshold * n
        self.dropped_store_edges = 0
        self.approx_excess = LocalRatioState(meter, "wap_excess")


def weight_class(weight: int) -> int:
    """
    ``j`` with ``2 ** (j - 1) <= weight < 2 ** j``.
    """
    if weight < 1:
        raise ParameterError(f"Weight classes cover positive weights only, got {weight}.")
    return weight.bit_length()


def wap_initialize(
    m0: Matching,
    seed: int,
    params: WapParams,
    n: int,
    meter: Optional[MemoryMeter] = None,
    marked: Optional[Iterable[Edge]] = None,
) -> WapState:
    """
    Sample the marked edges from ``seed`` unless ``marked`` is given, and set up one
    UnwAugPath instance per weight class present in M0.
    """
    if marked is None:
        rng = SplitMix64(seed)
        marked = [edge for edge in m0.edges if rng.next_bit()]
    marked = frozenset(marked)
    if not marked <= set(m0.edges):
        raise ParameterError("Marked edges must belong to the initial matching.")
    state = WapState(m0, marked, params, n, meter)

    members: Dict[int, List[Edge]] = {}
    for edge in m0.edges:
        members.setdefault(weight_class(edge.w), [])
        if edge in marked:
            members[weight_class(edge.w)].append(edge)
    for j, class_edges in sorted(members.items()):
        state.classes[j] = unw_init(Matching(class_edges), params.beta, meter, f"wap_class_{j}")
        if len(class_edges) < params.small_class_threshold:
            state.small_classes.add(j)
            state.small_class_store[j] = []
    logger.debug(
        "Marked %d of %d M0 edges, classes %s, small classes %s",
        len(marked),
        len(m0),
        sorted(state.classes),
        sorted(state.small_classes),
    )
    return state


def wap_feed(state: WapState, edge: Edge) -> None:
    left = state.m0.at(edge.u)
    right = state.m0.at(edge.v)
    base = left.w + right.w
    alpha = state.params.alpha

    if edge.w >= base:
        lr_process(state.approx_excess, edge, edge.w - base)

    if edge.w > (1 + alpha) * base:
        return
    left_marked = left in state.marked
    right_marked = right in state.marked
    if left_marked == right_marked:
        return
    heavy, light = (left, right) if left_marked else (right, left)
    if edge.w < (1 + 2 * alpha) * (Fraction(heavy.w, 2) + light.w):
        return

    j = weight_class(heavy.w)
    if j in state.small_classes:
        store = state.small_class_store[j]
        if len(store) >= state.store_cap:
            state.dropped_store_edges += 1
            return
        store.append(edge)
        if state.meter is not None:
            charge(state.meter, 1, f"wap_small_class_{j}")
    else:
        unw_feed(state.classes[j], edge)


def _offline_three_augmentations(
    middle_edges: List[Edge], store: List[Edge]
) -> Tuple[ThreeAugmentingPath, ...]:
    incident: Dict[int, List[Edge]] = {}
    for edge in store:
        incident.setdefault(edge.u, []).append(edge)
        incident.setdefault(edge.v, []).append(edge)

    used: Set[int] = set()
    paths = []
    for middle in sorted(middle_edges, key=lambda e: (-e.w, e)):
        u, v = middle.endpoints
        if u in used or v in used:
            continue
        best = None
        for left in incident.get(u, ()):
            a = left.other(u)
            if a in used:
                continue
            for right in incident.get(v, ()):
                b = right.other(v)
                if b in used or b == a:
                    continue
                key = (-(left.w + right.w), left, right)
                if best is None or key < best[0]:
                    best = (key, ThreeAugmentingPath(a, u, v, b, left, middle, right))
        if best is not None:
            path = best[1]
            paths.append(path)
            used.update(path.vertices)
    return tuple(paths)


def _class_paths(state: WapState, j: int) -> Tuple[ThreeAugmentingPath, ...]:
    if j in state.small_classes:
        return _offline_three_augmentations(
            list(state.classes[j].matching.edges), state.small_class_store[j]
        )
    return unw_finalize(state.classes[j])


def _path_footprint(path: ThreeAugmentingPath, m0: Matching) -> Set[int]:
    touched = set(path.vertices)
    for vertex in (path.a, path.b):
        touched.update(m0.at(vertex).endpoints)
    touched.discard(ZERO_EDGE.u)
    return touched


def _apply_three_augmentation(result: Matching, path: ThreeAugmentingPath, m0: Matching) -> int:
    removed = {m0.at(path.a), path.middle, m0.at(path.b)}
    removed.discard(ZERO_EDGE)
    gain = path.left.w + path.right.w - sum(edge.w for edge in removed)
    if gain <= 0:
        raise InvariantViolation(f"3-augmentation {path.vertices} has non-positive gain {gain}.")
    for edge in sorted(removed):
        result.remove(edge)
    result.add(path.left)
    result.add(path.right)
    return gain


def augment_by_classes(state: WapState) -> Matching:
    """
    Apply the recovered 3-augmentations from the highest class to the lowest,
    skipping any that touch a vertex already used.
    """
    result = state.m0.copy()
    touched: Set[int] = set()
    for j in sorted(state.classes, reverse=True):
        applied = 0
        for path in _class_paths(state, j):
            footprint = _path_footprint(path, state.m0)
            if touched.intersection(footprint):
                continue
            _apply_three_augmentation(result, path, state.m0)
            touched.update(footprint)
            applied += 1
        logger.debug("Class %d applied %d 3-augmentations", j, applied)
    return result


def patch_with_excess(state: WapState) -> Matching:
    result = state.m0.copy()
    for edge in lr_unwind(state.approx_excess.stack, Matching()):
        for vertex in edge.endpoints:
            if result.is_matched(vertex):
                result.remove(result.at(vertex))
        result.add(edge)
    return result


def wap_finalize_branches(state: WapState) -> Tuple[Matching, Matching]:
    if state.dropped_store_edges:
        logger.warning(
            "Small-class stores hit their cap of %d edges and dropped %d edges",
            state.store_cap,
            state.dropped_store_edges,
        )
    return patch_with_excess(state), augment_by_classes(state)


def wap_finalize(state: WapState) -> Matching:
    patched, augmented = wap_finalize_branches(state)
    if augmented.weight > patched.weight:
        return augmented
    return patched
