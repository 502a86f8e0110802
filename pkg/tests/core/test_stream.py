import math

import pytest

from matchstream.exceptions import BudgetViolationError, ParameterError, UsageError
from matchstream.graph import WeightedGraph
from matchstream.stream import (
    MemoryMeter,
    StreamSession,
    charge,
    make_fixed_order,
    make_random_order,
    memory_budget,
    next_pass,
    release,
)


@pytest.fixture
def path_graph():
    return WeightedGraph(11, [(vertex, vertex + 1, vertex + 1) for vertex in range(10)])


def test_single_edge_stream():
    graph = WeightedGraph(2, [(0, 1, 1)])
    session = make_random_order(graph, 99)
    assert session.order == (0,)


def test_stream_without_edges_is_rejected():
    with pytest.raises(ParameterError):
        make_random_order(WeightedGraph(3, []), 0)


def test_random_order_is_seeded(path_graph):
    first = make_random_order(path_graph, 5)
    assert first.order == make_random_order(path_graph, 5).order
    assert sorted(first.order) == list(range(10))
    assert first.order != make_random_order(path_graph, 6).order


def test_every_pass_replays_the_same_order(path_graph):
    session = make_random_order(path_graph, 1)
    first = list(next_pass(session))
    second = list(next_pass(session))
    assert first == second == list(session.edges)
    assert session.pass_count == 2


def test_fixed_order_must_be_a_permutation(path_graph):
    assert make_fixed_order(path_graph).order == tuple(range(10))
    with pytest.raises(ParameterError):
        make_fixed_order(path_graph, [0, 0, 1, 2, 3, 4, 5, 6, 7, 8])
    with pytest.raises(ParameterError):
        StreamSession(path_graph, range(9), 0)


def test_first_edge_is_uniform_over_seeds():
    graph = WeightedGraph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)])
    trials = 4000
    counts = [0] * graph.m
    for seed in range(trials):
        counts[make_random_order(graph, seed).order[0]] += 1
    deviation = 5 * math.sqrt(trials * 0.25 * 0.75)
    for count in counts:
        assert abs(count - trials / 4) < deviation


@pytest.mark.parametrize(
    "n,c_mem,k_mem,expected",
    ((16, 8, 2, 2048), (16, 1, 0, 16), (1, 1, 1, 2), (3, 2, 1, math.ceil(6 * math.log2(3)))),
)
def test_memory_budget(n, c_mem, k_mem, expected):
    assert memory_budget(n, c_mem, k_mem) == expected


def test_meter_tracks_peak_and_owners():
    meter = MemoryMeter(16)
    charge(meter, 5, "stack")
    charge(meter, 3, "store")
    release(meter, 5, "stack")
    assert meter.stored_edges == 3
    assert meter.peak == 8
    assert meter.by_owner == {"stack": 0, "store": 3}
    assert not meter.over_budget


def test_lenient_meter_records_overflow():
    meter = MemoryMeter(4, 1, 0)
    charge(meter, 10, "store")
    assert meter.over_budget


def test_strict_meter_names_the_owner():
    meter = MemoryMeter(4, 1, 0, strict=True)
    with pytest.raises(BudgetViolationError, match="support"):
        charge(meter, 5, "support")


def test_meter_rejects_misuse():
    meter = MemoryMeter(4)
    with pytest.raises(ParameterError):
        charge(meter, -1)
    with pytest.raises(ParameterError):
        release(meter, -1)
    with pytest.raises(UsageError):
        release(meter, 1)
