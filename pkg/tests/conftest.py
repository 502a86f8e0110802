from argparse import Namespace
from pathlib import Path
import tempfile

import pytest

from matchstream.config import Config
from matchstream.constants import THREADS_ENV_VAR
from matchstream.graph import WeightedGraph

A, B, C, D, E, F, G, H = range(8)


@pytest.fixture(autouse=True)
def _clean_current_working_directory(monkeypatch):
    with tempfile.TemporaryDirectory() as temp_dir:
        monkeypatch.chdir(temp_dir)
        yield


@pytest.fixture
def config(monkeypatch):
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    namespace = Namespace()
    namespace.seed = 0
    namespace.threads = 1
    namespace.strict_memory = True
    return Config(namespace)


@pytest.fixture
def fig1_graph():
    # matching {c,d} of weight 5; the optimum {a,c}, {d,f} weighs 8
    return WeightedGraph(6, [(C, D, 5), (B, C, 2), (A, C, 4), (D, F, 4), (D, E, 2)])


@pytest.fixture
def fig2_graph():
    # solid edges ab, cd, ef first; the weight-0 edge gh is left out
    return WeightedGraph(
        8,
        [
            (A, B, 10),
            (C, D, 10),
            (E, F, 1),
            (A, D, 20),
            (A, C, 13),
            (C, F, 8),
            (E, G, 1),
            (E, H, 2),
            (F, H, 1),
        ],
    )


@pytest.fixture
def four_cycle_graph():
    return WeightedGraph(4, [(A, B, 3), (B, C, 4), (C, D, 3), (A, D, 4)])


@pytest.fixture
def six_path_graph():
    return WeightedGraph(6, [(A, B, 1), (B, C, 2), (C, D, 1), (D, E, 2), (E, F, 1)])


@pytest.fixture
def write_graph(tmp_path):
    def _write_graph(graph: WeightedGraph, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(graph.to_text())
        return path

    return _write_graph
