from fractions import Fraction
import itertools
import logging
from pathlib import Path

from matchstream._utils.filesystem import write_text_output
from matchstream._utils.prng import derive_subseed
from matchstream.algorithms.layered import (
    LayeredGraph,
    build_layered,
    enumerate_good_pairs,
    random_bipartition,
)
from matchstream.algorithms.multipass import MultipassConfig
from matchstream.exceptions import ParameterError
from matchstream.graph import Matching, WeightedGraph

logger = logging.getLogger("matchstream.layered_dump")

ORIGIN_SUFFIX = ".origin"


def layered_for_pair_index(
    graph: WeightedGraph,
    matching: Matching,
    pair_index: int,
    W: Fraction,
    cfg: MultipassConfig,
) -> LayeredGraph:
    """
    Build the layered graph of the ``pair_index``-th good pair, drawing the
    bipartition the first multipass iteration would use at ``W``.
    """
    if pair_index < 0:
        raise ParameterError(f"Pair index must be non-negative, got {pair_index}.")
    if W <= 0:
        raise ParameterError(f"W must be positive, got {W}.")
    pairs = enumerate_good_pairs(cfg.eps, cfg.g, cfg.k_max, cfg.sum_b_max, cfg.pair_cap)
    pair = next(itertools.islice(pairs, pair_index, None), None)
    if pair is None:
        raise ParameterError(f"There is no good pair with index {pair_index}.")
    param = random_bipartition(graph, matching, derive_subseed(cfg.seed, 0, W))
    return build_layered(param, pair, W, matching)


def origin_path(output_path: Path) -> Path:
    return output_path.with_name(output_path.name + ORIGIN_SUFFIX)


def write_layered(layered: LayeredGraph, output_path: Path) -> Path:
    sidecar = origin_path(output_path)
    write_text_output(output_path, layered.to_text())
    write_text_output(sidecar, layered.origin_text())
    logger.debug("Wrote %r to %s and %s", layered, output_path, sidecar)
    return sidecar
