from fractions import Fraction

from hypothesis import given, settings
import pytest

from matchstream._utils.prng import SplitMix64
from matchstream.algorithms.layered import GoodPair, Parametrization
from matchstream.algorithms.multipass import (
    AugmentationBatch,
    BaseBipartiteMatcher,
    ExactBipartiteMatcher,
    MultipassConfig,
    admit_greedily,
    find_augmentations_for_weight,
    get_bipartite_matcher,
    has_window_edges,
    improve_matching,
    run_iteration,
    run_multipass,
    solve,
    viable_pairs,
    weight_grid,
)
from matchstream.algorithms.oracles import exact_mcm_bipartite, exact_mwm
from matchstream.commands.gen import ERDOS_RENYI, GeneratorSpec, generate_graph
from matchstream.constants import LEFT, RIGHT
from matchstream.exceptions import ParameterError
from matchstream.graph import Edge, Matching, WeightedGraph, make_augmentation

from .strategies import graphs_with_matching

SIDES = {0: LEFT, 1: RIGHT, 2: LEFT, 3: RIGHT, 4: LEFT, 5: RIGHT}


class CountingMatcher(BaseBipartiteMatcher):
    passes_per_call = 2

    def __init__(self):
        self.calls = 0

    def match(self, graph):
        self.calls += 1
        return exact_mcm_bipartite(graph)


@pytest.fixture
def cfg():
    return MultipassConfig.build()


@pytest.fixture
def path_matching():
    return Matching([Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 1)])


def test_config_defaults(cfg):
    assert cfg.eps == Fraction(2, 5)
    assert cfg.g == Fraction(1, 8)
    assert cfg.k_max == 9
    assert cfg.iters == 50
    assert cfg.stall_limit == 1
    assert cfg.sum_b_max == 1 + Fraction(2, 5) ** 4


def test_strict_constants_config_derives_granularity():
    cfg = MultipassConfig.build(eps=Fraction(1, 20), strict_constants=True)
    assert cfg.g == Fraction(1, 20) ** 12
    assert cfg.k_max == 12801


@pytest.mark.parametrize(
    "kwargs",
    (
        {"eps": 0},
        {"eps": Fraction(19, 20)},
        {"eps": Fraction(1, 2), "strict_constants": True},
        {"g": 0},
        {"k_max": 1},
        {"k_max": 202},
        {"iters": 0},
        {"pair_cap": 0},
        {"stall_limit": 0},
    ),
)
def test_config_rejects_invalid_values(kwargs):
    with pytest.raises(ParameterError):
        MultipassConfig.build(**kwargs)


def test_weight_grid_covers_the_target():
    grid = weight_grid(Fraction(1, 2), 1)
    assert grid[0] == 1
    assert grid[1] == Fraction(17, 16)
    assert grid[-2] < 257 <= grid[-1]


def test_window_needs_an_unmatched_edge(cfg, six_path_graph, path_matching):
    assert has_window_edges(six_path_graph, path_matching, Fraction(4), cfg)
    assert not has_window_edges(six_path_graph, path_matching, Fraction(100), cfg)
    full = Matching([Edge(1, 2, 2), Edge(3, 4, 2)])
    assert not has_window_edges(WeightedGraph(6, [(1, 2, 2), (3, 4, 2)]), full, Fraction(4), cfg)


def test_default_matcher():
    assert isinstance(get_bipartite_matcher(), ExactBipartiteMatcher)
    matcher = CountingMatcher()
    assert get_bipartite_matcher(matcher) is matcher


def test_viable_pairs_on_the_six_path(cfg, six_path_graph, path_matching):
    param = Parametrization.from_sides(six_path_graph, path_matching, SIDES)
    assert viable_pairs(param, path_matching, 4, cfg) == (
        GoodPair.from_units((2, 2, 2), (4, 4), cfg.g),
    )


def test_six_path_batch(cfg, six_path_graph, path_matching):
    param = Parametrization.from_sides(six_path_graph, path_matching, SIDES)
    batch = find_augmentations_for_weight(
        six_path_graph, path_matching, 4, cfg, parametrization=param
    )
    (aug,) = batch.augmentations
    assert aug.vertices == (1, 2, 3, 4)
    assert aug.added_edges == (Edge(1, 2, 2), Edge(3, 4, 2))
    assert set(aug.neighborhood) == set(path_matching.edges)
    assert batch.total_gain == 1
    assert batch.groups == 1
    assert batch.peak_edges > 0


def test_light_cycle_needs_many_layers():
    graph = WeightedGraph(4, [(0, 1, 20), (1, 2, 21), (2, 3, 20), (0, 3, 21)])
    matching = Matching([Edge(0, 1, 20), Edge(2, 3, 20)])
    cfg = MultipassConfig.build(eps=Fraction(1, 2), g=Fraction(1, 8192), k_max=65)
    param = Parametrization.from_sides(graph, matching, {0: LEFT, 1: RIGHT, 2: LEFT, 3: RIGHT})
    pair = GoodPair.from_units([122] * 65, [128] * 64, cfg.g)
    batch = find_augmentations_for_weight(
        graph, matching, 1344, cfg, parametrization=param, pairs=[pair]
    )
    (cycle,) = batch.augmentations
    assert cycle.gain == batch.total_gain == 2
    assert len(cycle.vertices) == 4


def test_admission_prefers_larger_weights(six_path_graph, path_matching):
    long_path = make_augmentation(six_path_graph, path_matching, (1, 2, 3, 4))
    short_path = make_augmentation(six_path_graph, path_matching, (1, 2))
    admission = admit_greedily(
        [
            AugmentationBatch(Fraction(4), (long_path,), long_path.gain),
            AugmentationBatch(Fraction(8), (short_path,), short_path.gain),
        ]
    )
    assert admission.augmentations == (short_path,)
    assert admission.blocked == {Fraction(4): 1}


def test_optimal_matching_is_left_unchanged(cfg, four_cycle_graph):
    optimum = exact_mwm(four_cycle_graph)
    assert improve_matching(four_cycle_graph, optimum, cfg) == optimum


def test_iteration_counts_matcher_passes(cfg, six_path_graph, path_matching):
    matcher = CountingMatcher()
    outcome = run_iteration(six_path_graph, path_matching, cfg, matcher)
    assert matcher.calls > 0
    assert outcome.passes == 1 + 2 * matcher.calls
    assert outcome.matching.weight == path_matching.weight + outcome.gain


def test_single_edge_is_found_in_the_first_iteration(cfg):
    graph = WeightedGraph(2, [(0, 1, 5)])
    result = run_multipass(graph, cfg)
    assert result.matching.edges == (Edge(0, 1, 5),)
    assert result.per_iteration_gains == (5, 0)
    assert result.iterations_run == 2


def test_stall_limit_allows_more_zero_gain_iterations():
    graph = WeightedGraph(2, [(0, 1, 5)])
    result = run_multipass(graph, MultipassConfig.build(stall_limit=3))
    assert result.per_iteration_gains == (5, 0, 0, 0)
    assert result.iterations_run == 4


def test_light_perfect_matching_is_improved(four_cycle_graph):
    cfg = MultipassConfig.build(
        eps=Fraction(1, 2), g=Fraction(1, 8192), k_max=6, stall_limit=10
    )
    initial = Matching([Edge(0, 1, 3), Edge(2, 3, 3)])
    assert solve(four_cycle_graph, cfg, initial=initial).weight == 8


def test_initial_matching_must_come_from_the_graph(cfg, four_cycle_graph):
    with pytest.raises(ParameterError):
        run_multipass(four_cycle_graph, cfg, initial=Matching([Edge(0, 1, 4)]))


def test_worker_count_does_not_change_the_result(fig1_graph):
    cfg = MultipassConfig.build(iters=3, seed=5)
    assert run_multipass(fig1_graph, cfg, max_workers=1) == run_multipass(
        fig1_graph, cfg, max_workers=4
    )


@settings(max_examples=15, deadline=None)
@given(graphs_with_matching(max_n=6))
def test_multipass_never_loses_weight(valid_matching, case):
    graph, initial = case
    result = run_multipass(graph, MultipassConfig.build(iters=3), initial=initial)
    assert valid_matching(result.matching, graph)
    assert all(gain >= 0 for gain in result.per_iteration_gains)
    assert result.matching.weight == initial.weight + sum(result.per_iteration_gains)


def small_random_graph(seed, weight_max=4):
    rng = SplitMix64(seed)
    n = 4 + rng.next_below(5)
    m = min(n * (n - 1) // 2, n + rng.next_below(n + 1))
    return generate_graph(GeneratorSpec(ERDOS_RENYI, n, m, weight_max=weight_max, seed=seed))


@pytest.mark.slow
def test_multipass_converges_on_small_random_graphs(valid_matching):
    reached = 0
    for seed in range(200):
        graph = small_random_graph(seed)
        result = run_multipass(graph, MultipassConfig.build(seed=seed, stall_limit=3))
        gains = result.per_iteration_gains
        assert valid_matching(result.matching, graph)
        assert all(gain >= 0 for gain in gains)
        assert result.matching.weight == sum(gains)
        reached += 10 * result.matching.weight >= 6 * exact_mwm(graph).weight
    assert reached >= 190


@pytest.mark.slow
def test_admitted_augmentations_block_few_lower_class_ones(partial_matching):
    for seed in range(30):
        graph = generate_graph(GeneratorSpec(ERDOS_RENYI, 10, 20, weight_max=8, seed=seed))
        matching = partial_matching(graph, seed)
        cfg = MultipassConfig.build(seed=seed)
        limit = 64 / cfg.eps ** 2 + 1
        batches = [
            find_augmentations_for_weight(graph, matching, W, cfg)
            for W in weight_grid(cfg.eps, graph.max_weight)
            if has_window_edges(graph, matching, W, cfg)
        ]
        admission = admit_greedily(batches)
        for blocker in admission.augmentations:
            home = max(batch.W for batch in batches if blocker in batch.augmentations)
            for batch in batches:
                if batch.W >= home:
                    continue
                hits = sum(1 for aug in batch.augmentations if blocker.footprint & aug.footprint)
                assert hits <= limit
        assert sum(admission.blocked.values()) <= limit * len(admission.augmentations)
