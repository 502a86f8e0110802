import itertools

import pytest

from matchstream._utils.prng import SplitMix64
from matchstream.graph import Matching


def all_matchings(edges):
    """
    Every matching over ``edges``, the empty one included.
    """
    edges = tuple(edges)

    def extend(start, used, chosen):
        yield tuple(chosen)
        for index in range(start, len(edges)):
            edge = edges[index]
            if edge.u in used or edge.v in used:
                continue
            chosen.append(edge)
            yield from extend(index + 1, used | {edge.u, edge.v}, chosen)
            chosen.pop()

    yield from extend(0, frozenset(), [])


def brute_force_mwm_weight(graph, weight_fn=None):
    if weight_fn is None:
        weight_fn = lambda edge: edge.w  # noqa: E731
    return max(sum(weight_fn(edge) for edge in matching) for matching in all_matchings(graph.edges))


def brute_force_mcm_size(graph):
    return max(len(matching) for matching in all_matchings(graph.edges))


def minimum_vertex_cover_size(graph):
    vertices = graph.support
    for size in range(len(vertices) + 1):
        for cover in itertools.combinations(vertices, size):
            chosen = set(cover)
            if all(edge.u in chosen or edge.v in chosen for edge in graph.edges):
                return size
    return len(vertices)


def is_valid_matching(matching, graph):
    seen = set()
    for edge in matching.edges:
        if graph.edge(edge.u, edge.v) != edge:
            return False
        if edge.u in seen or edge.v in seen:
            return False
        seen.update(edge.endpoints)
    return matching.weight == matching.recompute_weight()


@pytest.fixture(scope="session")
def brute_force_mwm():
    return brute_force_mwm_weight


@pytest.fixture(scope="session")
def brute_force_mcm():
    return brute_force_mcm_size


@pytest.fixture(scope="session")
def vertex_cover_size():
    return minimum_vertex_cover_size


@pytest.fixture(scope="session")
def valid_matching():
    return is_valid_matching


@pytest.fixture(scope="session")
def every_matching():
    return all_matchings


def seeded_partial_matching(graph, seed):
    """
    Greedy matching over the first half of a seeded shuffle of the edges.
    """
    edges = list(graph.edges)
    SplitMix64(seed).shuffle(edges)
    matching = Matching()
    for edge in edges[: len(edges) // 2]:
        if matching.can_add(edge):
            matching.add(edge)
    return matching


@pytest.fixture(scope="session")
def partial_matching():
    return seeded_partial_matching
