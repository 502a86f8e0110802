import pytest

from matchstream.algorithms.oracles import exact_mwm
from matchstream.commands.gen import (
    CYCLE_FAMILY,
    ERDOS_RENYI,
    TIGHT_HALF,
    WEIGHT_CLASSES,
    GeneratorSpec,
    generate_graph,
    greedy_matching,
)
from matchstream.exceptions import ParameterError
from matchstream.graph import Edge


@pytest.mark.parametrize("family", (ERDOS_RENYI, WEIGHT_CLASSES, TIGHT_HALF, CYCLE_FAMILY))
def test_generators_are_seeded(family):
    spec = GeneratorSpec(family, 12, 20, seed=4)
    assert generate_graph(spec).to_text() == generate_graph(spec).to_text()


def test_erdos_renyi_draws_m_edges():
    graph = generate_graph(GeneratorSpec(ERDOS_RENYI, 6, 7, weight_max=9, seed=1))
    assert graph.m == 7
    assert all(1 <= edge.w <= 9 for edge in graph.edges)
    assert graph.to_text() != generate_graph(GeneratorSpec(ERDOS_RENYI, 6, 7, 9, seed=2)).to_text()


def test_weight_classes_are_powers_of_two():
    graph = generate_graph(GeneratorSpec(WEIGHT_CLASSES, 8, 20, weight_max=64, seed=3))
    assert graph.m == 20
    assert all(edge.w & (edge.w - 1) == 0 and edge.w <= 64 for edge in graph.edges)


@pytest.mark.parametrize("n", (4, 8, 12))
def test_tight_half_defeats_weighted_greedy(n):
    graph = generate_graph(GeneratorSpec(TIGHT_HALF, n))
    greedy = greedy_matching(graph)
    assert len(greedy) == n // 4
    assert 2 * greedy.weight == exact_mwm(graph).weight


def test_cycle_family():
    graph = generate_graph(GeneratorSpec(CYCLE_FAMILY, 4))
    assert set(graph.edges) == {Edge(0, 1, 3), Edge(1, 2, 4), Edge(2, 3, 3), Edge(0, 3, 4)}
    joined = generate_graph(GeneratorSpec(CYCLE_FAMILY, 8))
    assert joined.edge(3, 4) == Edge(3, 4, 1)
    assert joined.m == 9


@pytest.mark.parametrize(
    "spec",
    (
        GeneratorSpec("grid", 4, 2),
        GeneratorSpec(ERDOS_RENYI, 1),
        GeneratorSpec(ERDOS_RENYI, 4, 7),
        GeneratorSpec(ERDOS_RENYI, 4, 2, weight_max=0),
        GeneratorSpec(ERDOS_RENYI, 4, 2, weight_max=257),
    ),
)
def test_invalid_generator_specs(spec):
    with pytest.raises(ParameterError):
        generate_graph(spec)


def test_greedy_breaks_ties_by_endpoints():
    graph = generate_graph(GeneratorSpec(CYCLE_FAMILY, 4))
    assert greedy_matching(graph).edges == (Edge(0, 3, 4), Edge(1, 2, 4))
