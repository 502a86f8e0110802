"""
Multi-pass (1 - eps) weighted matching.

Every iteration scans a geometric grid of weight values W. For each W one random
bipartition is drawn and every viable good pair gets its own layered graph. A
maximum matching of that layered graph yields walks through all layers, whose
projections split into augmentations; the best pair's batch represents W. The
batches are then admitted greedily from the largest W down.
"""
from abc import ABC, abstractmethod
from fractions import Fraction
import logging
import math
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from matchstream._utils.prng import derive_subseed
from matchstream._utils.various import ordered_map
from matchstream.algorithms.layered import (
    GoodPair,
    Parametrization,
    augmenting_walks,
    build_layered,
    decompose_alternating_path,
    default_sum_b_max,
    in_augmentation_class,
    is_good_pair,
    max_pair_length,
    project_walk,
    random_bipartition,
    rounded_gain,
)
from matchstream.algorithms.oracles import exact_mcm_bipartite
from matchstream.constants import (
    DEFAULT_EPS,
    DEFAULT_GRANULARITY,
    DEFAULT_ITERS,
    DEFAULT_K_MAX,
    DEFAULT_PAIR_CAP,
    DEFAULT_SEED,
    DEFAULT_STALL_LIMIT,
    STRICT_CONSTANTS_MAX_EPS,
    RELAXED_MAX_EPS,
    RIGHT,
)
from matchstream.exceptions import EnumerationGuardError, InvariantViolation, ParameterError
from matchstream.graph import (
    Augmentation,
    Matching,
    WeightedGraph,
    apply_augmentation,
)
from matchstream.stream import MemoryMeter, charge, release

logger = logging.getLogger("matchstream.multipass")

Number = Union[int, float, Fraction]


class MultipassConfig(NamedTuple):
    eps: Fraction
    g: Fraction
    k_max: int
    iters: int
    pair_cap: int
    seed: int
    strict_constants: bool
    stall_limit: int

    @classmethod
    def build(
        cls,
        eps: Number = DEFAULT_EPS,
        g: Optional[Number] = None,
        k_max: Optional[int] = None,
        iters: int = DEFAULT_ITERS,
        pair_cap: int = DEFAULT_PAIR_CAP,
        seed: int = DEFAULT_SEED,
        strict_constants: bool = False,
        stall_limit: int = DEFAULT_STALL_LIMIT,
    ) -> "MultipassConfig":
        eps = Fraction(eps)
        if strict_constants:
            if not 0 < eps < STRICT_CONSTANTS_MAX_EPS:
                raise ParameterError(
                    f"Strict-constants mode needs 0 < eps < {STRICT_CONSTANTS_MAX_EPS}, got {eps}."
                )
            g = eps ** 12
            k_max = max_pair_length(eps)
        else:
            if not 0 < eps <= RELAXED_MAX_EPS:
                raise ParameterError(f"eps must lie in (0, {RELAXED_MAX_EPS}], got {eps}.")
            g = DEFAULT_GRANULARITY if g is None else Fraction(g)
            k_max = DEFAULT_K_MAX if k_max is None else k_max
        if g <= 0:
            raise ParameterError(f"Granularity must be positive, got {g}.")
        if not 2 <= k_max <= max_pair_length(eps):
            raise ParameterError(
                f"k_max must lie in [2, {max_pair_length(eps)}] for eps={eps}, got {k_max}."
            )
        if iters < 1:
            raise ParameterError(f"At least one iteration is needed, got {iters}.")
        if pair_cap < 1:
            raise ParameterError(f"Pair cap must be positive, got {pair_cap}.")
        if stall_limit < 1:
            raise ParameterError(f"Stall limit must be positive, got {stall_limit}.")
        return cls(eps, Fraction(g), k_max, iters, pair_cap, seed, strict_constants, stall_limit)

    @property
    def sum_b_max(self) -> Fraction:
        return default_sum_b_max(self.eps)


class AugmentationBatch(NamedTuple):
    W: Fraction
    augmentations: Tuple[Augmentation, ...]
    total_gain: int
    pair: Optional[GoodPair] = None
    groups: int = 0
    peak_edges: int = 0


class BaseBipartiteMatcher(ABC):
    """
    Maximum-cardinality matcher for the unweighted layered graphs. Nodes carry their
    side in the ``bipartite`` attribute.
    """

    passes_per_call = 1

    @abstractmethod
    def match(self, graph: nx.Graph) -> Matching:
        pass


class ExactBipartiteMatcher(BaseBipartiteMatcher):
    def match(self, graph: nx.Graph) -> Matching:
        return exact_mcm_bipartite(graph)


def get_bipartite_matcher(
    matcher: Optional[BaseBipartiteMatcher] = None,
) -> BaseBipartiteMatcher:
    if matcher is None:
        return ExactBipartiteMatcher()
    return matcher


def weight_grid(eps: Number, max_weight: int) -> Tuple[Fraction, ...]:
    """
    ``(1 + eps ** 4) ** i`` for ``i`` up to the first power reaching
    ``(64 / eps ** 2 + 1) * max_weight``.
    """
    eps = Fraction(eps)
    base = 1 + eps ** 4
    target = (64 / eps ** 2 + 1) * max_weight
    grid = [Fraction(1)]
    while grid[-1] < target:
        grid.append(grid[-1] * base)
    return tuple(grid)


def has_window_edges(
    graph: WeightedGraph, matching: Matching, W: Fraction, cfg: MultipassConfig
) -> bool:
    low = 2 * cfg.g * W
    high = (cfg.sum_b_max + cfg.g) * W
    return any(low <= edge.w < high for edge in graph.edges if edge not in matching)


def viable_pairs(
    param: Parametrization, matching: Matching, W: Number, cfg: MultipassConfig
) -> Tuple[GoodPair, ...]:
    """
    Good pairs for which every layer's window holds an edge on some walk through
    all layers. Other pairs give layered graphs without such walks.
    """
    unit = cfg.g * Fraction(W)
    top = math.floor(cfg.sum_b_max / cfg.g)

    a_by_left: Dict[int, List[Tuple[int, int]]] = {}
    a_by_right: Dict[int, List[Tuple[int, int]]] = {}
    for edge in param.a_edges:
        units = math.ceil(edge.w / unit)
        left = param.left_end(edge)
        right = edge.other(left)
        a_by_left.setdefault(left, []).append((units, right))
        a_by_right.setdefault(right, []).append((units, left))
    b_by_right: Dict[int, List[Tuple[int, int]]] = {}
    for edge in param.b_edges:
        units = math.floor(edge.w / unit)
        if units < 2:
            continue
        left = param.left_end(edge)
        b_by_right.setdefault(edge.other(left), []).append((units, left))

    starts: Dict[int, Set[int]] = {}
    for right, entries in a_by_right.items():
        for units, _ in entries:
            starts.setdefault(units, set()).add(right)
    free_right = {
        vertex
        for vertex, side in param.side.items()
        if side == RIGHT and not matching.is_matched(vertex)
    }
    if free_right:
        starts.setdefault(0, set()).update(free_right)

    found: Set[Tuple[Tuple[int, ...], Tuple[int, ...]]] = set()

    def grouped(
        sources: Set[int], index: Dict[int, List[Tuple[int, int]]]
    ) -> Dict[int, Set[int]]:
        groups: Dict[int, Set[int]] = {}
        for vertex in sources:
            for units, other in index.get(vertex, ()):
                groups.setdefault(units, set()).add(other)
        return groups

    def extend(rights: Set[int], a_units: Tuple[int, ...], b_units: Tuple[int, ...]) -> None:
        if len(a_units) == cfg.k_max:
            return
        for b, lefts in sorted(grouped(rights, b_by_right).items()):
            if sum(b_units) + b > top:
                continue
            new_b = b_units + (b,)
            finals = set(grouped(lefts, a_by_left))
            if any(not matching.is_matched(vertex) for vertex in lefts):
                finals.add(0)
            for a in sorted(finals):
                found.add((a_units + (a,), new_b))
            for a, next_rights in sorted(grouped(lefts, a_by_left).items()):
                if a < 2 or sum(a_units) + a >= top:
                    continue
                extend(next_rights, a_units + (a,), new_b)

    for a, rights in sorted(starts.items()):
        if a < top:
            extend(rights, (a,), ())

    pairs = []
    for a_units, b_units in found:
        pair = GoodPair.from_units(a_units, b_units, cfg.g)
        if is_good_pair(pair.tau_a, pair.tau_b, cfg.eps, cfg.g, cfg.sum_b_max):
            pairs.append(pair)
    if len(pairs) > cfg.pair_cap:
        raise EnumerationGuardError(
            f"{len(pairs)} viable good pairs at W={W} exceed the cap of {cfg.pair_cap}."
        )
    return tuple(sorted(pairs, key=lambda pair: pair.order_key))


class PairOutcome(NamedTuple):
    augmentations: Tuple[Augmentation, ...]
    edge_count: int


def _best_component(
    components: Sequence[Augmentation], W: Fraction, cfg: MultipassConfig
) -> Optional[Augmentation]:
    unit = cfg.g * W
    if not any(rounded_gain(component, unit) >= unit for component in components):
        raise InvariantViolation(
            f"No component of an all-layers walk reaches rounded gain {unit} at W={W}."
        )
    best = None
    for component in components:
        if not in_augmentation_class(component, W, cfg.eps, cfg.g):
            continue
        if best is None or component.gain > best.gain:
            best = component
    return best


def augmentations_for_pair(
    graph: WeightedGraph,
    matching: Matching,
    param: Parametrization,
    pair: GoodPair,
    W: Fraction,
    cfg: MultipassConfig,
    matcher: BaseBipartiteMatcher,
    meter: Optional[MemoryMeter] = None,
) -> PairOutcome:
    layered = build_layered(param, pair, W, matching)
    if meter is not None:
        charge(meter, layered.edge_count, "layered_graph")
    matched = matcher.match(layered.to_networkx(include_boundary_x=False))

    kept: List[Augmentation] = []
    used: Set[int] = set()
    for walk in augmenting_walks(layered, matched):
        projected = project_walk(layered, walk)
        path, cycles = decompose_alternating_path(projected, matching, graph, param.side)
        components = ([] if path.is_empty else [path]) + list(cycles)
        best = _best_component(components, W, cfg)
        if best is None or used.intersection(best.footprint):
            continue
        kept.append(best)
        used.update(best.footprint)

    if meter is not None:
        release(meter, layered.edge_count, "layered_graph")
    return PairOutcome(tuple(kept), layered.edge_count)


def find_augmentations_for_weight(
    graph: WeightedGraph,
    matching: Matching,
    W: Number,
    cfg: MultipassConfig,
    matcher: Optional[BaseBipartiteMatcher] = None,
    parametrization: Optional[Parametrization] = None,
    pairs: Optional[Sequence[GoodPair]] = None,
    iteration: int = 0,
    meter: Optional[MemoryMeter] = None,
) -> AugmentationBatch:
    W = Fraction(W)
    matcher = get_bipartite_matcher(matcher)
    if parametrization is None:
        parametrization = random_bipartition(
            graph, matching, derive_subseed(cfg.seed, iteration, W)
        )
    if pairs is None:
        pairs = viable_pairs(parametrization, matching, W, cfg)

    best = AugmentationBatch(W, (), 0)
    peak_edges = 0
    for pair in pairs:
        group_meter = meter.spawn(graph.n) if meter is not None else None
        outcome = augmentations_for_pair(
            graph, matching, parametrization, pair, W, cfg, matcher, group_meter
        )
        peak_edges = max(peak_edges, outcome.edge_count)
        total = sum(aug.gain for aug in outcome.augmentations)
        if total > best.total_gain:
            best = AugmentationBatch(W, outcome.augmentations, total, pair)
    if best.augmentations:
        logger.debug(
            "W=%s: %d pairs, best batch of %d augmentations with gain %d",
            W,
            len(pairs),
            len(best.augmentations),
            best.total_gain,
        )
    return best._replace(groups=len(pairs), peak_edges=peak_edges)


class Admission(NamedTuple):
    augmentations: Tuple[Augmentation, ...]
    blocked: Dict[Fraction, int]


def admit_greedily(batches: Sequence[AugmentationBatch]) -> Admission:
    """
    Admit augmentations from the largest W down, skipping any that touch a
    vertex already used.
    """
    used: Set[int] = set()
    admitted = []
    blocked: Dict[Fraction, int] = {}
    for batch in sorted(batches, key=lambda batch: batch.W, reverse=True):
        for aug in batch.augmentations:
            if used.intersection(aug.footprint):
                blocked[batch.W] = blocked.get(batch.W, 0) + 1
                continue
            admitted.append(aug)
            used.update(aug.footprint)
    return Admission(tuple(admitted), blocked)


class IterationOutcome(NamedTuple):
    matching: Matching
    gain: int
    passes: int
    peak_edges: int
    admission: Admission


def run_iteration(
    graph: WeightedGraph,
    matching: Matching,
    cfg: MultipassConfig,
    matcher: Optional[BaseBipartiteMatcher] = None,
    iteration: int = 0,
    max_workers: int = 1,
    meter: Optional[MemoryMeter] = None,
) -> IterationOutcome:
    matcher = get_bipartite_matcher(matcher)
    grid = [
        W
        for W in weight_grid(cfg.eps, graph.max_weight)
        if has_window_edges(graph, matching, W, cfg)
    ]

    def search(W: Fraction) -> AugmentationBatch:
        return find_augmentations_for_weight(
            graph, matching, W, cfg, matcher, iteration=iteration, meter=meter
        )

    batches = ordered_map(search, grid, max_workers)
    admission = admit_greedily(batches)

    result = matching
    gain = 0
    for aug in admission.augmentations:
        if aug.gain <= 0:
            raise InvariantViolation(f"Admitted augmentation {aug.vertices} has gain {aug.gain}.")
        result = apply_augmentation(result, aug)
        gain += aug.gain
    if result.weight != matching.weight + gain:
        raise InvariantViolation("Matching weight does not match the admitted gains.")

    groups = sum(batch.groups for batch in batches)
    peak_edges = max((batch.peak_edges for batch in batches), default=0)
    budget = meter.budget if meter is not None else max(peak_edges, 1)
    groups_per_pass = max(1, budget // max(peak_edges, 1))
    passes = 1 + matcher.passes_per_call * math.ceil(groups / groups_per_pass)
    logger.debug(
        "Iteration %d: %d weights searched, %d groups, %d admitted, gain %d",
        iteration,
        len(grid),
        groups,
        len(admission.augmentations),
        gain,
    )
    return IterationOutcome(result, gain, passes, peak_edges, admission)


def improve_matching(
    graph: WeightedGraph,
    matching: Matching,
    cfg: MultipassConfig,
    matcher: Optional[BaseBipartiteMatcher] = None,
    iteration: int = 0,
    max_workers: int = 1,
) -> Matching:
    return run_iteration(graph, matching, cfg, matcher, iteration, max_workers).matching


class MultipassResult(NamedTuple):
    matching: Matching
    iterations_run: int
    passes: int
    peak_edges: int
    per_iteration_gains: Tuple[int, ...]


def run_multipass(
    graph: WeightedGraph,
    cfg: MultipassConfig,
    matcher: Optional[BaseBipartiteMatcher] = None,
    initial: Optional[Matching] = None,
    max_workers: int = 1,
    meter: Optional[MemoryMeter] = None,
) -> MultipassResult:
    for edge in initial or ():
        if graph.edge(edge.u, edge.v) != edge:
            raise ParameterError(f"Initial matching edge {edge} is not in the graph.")
    matching = Matching() if initial is None else initial.copy()
    gains: List[int] = []
    passes = 0
    peak_edges = 0
    stalled = 0
    for iteration in range(cfg.iters):
        outcome = run_iteration(graph, matching, cfg, matcher, iteration, max_workers, meter)
        matching = outcome.matching
        gains.append(outcome.gain)
        passes += outcome.passes
        peak_edges = max(peak_edges, outcome.peak_edges)
        stalled = stalled + 1 if outcome.gain == 0 else 0
        if stalled >= cfg.stall_limit:
            break
    logger.debug("Multipass finished after %d iterations at weight %d", len(gains), matching.weight)
    return MultipassResult(matching, len(gains), passes, peak_edges, tuple(gains))


def solve(
    graph: WeightedGraph,
    cfg: MultipassConfig,
    matcher: Optional[BaseBipartiteMatcher] = None,
    initial: Optional[Matching] = None,
    max_workers: int = 1,
) -> Matching:
    return run_multipass(graph, cfg, matcher, initial, max_workers).matching
