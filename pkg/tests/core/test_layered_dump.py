from fractions import Fraction

import pytest

from matchstream.algorithms.multipass import MultipassConfig
from matchstream.commands.layered_dump import layered_for_pair_index, origin_path, write_layered
from matchstream.exceptions import ParameterError
from matchstream.graph import Edge, Matching


@pytest.fixture
def path_matching():
    return Matching([Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 1)])


@pytest.mark.parametrize(
    "pair_index,W", ((-1, Fraction(4)), (0, Fraction(0)), (10 ** 6, Fraction(4)))
)
def test_invalid_dump_requests(six_path_graph, path_matching, pair_index, W):
    with pytest.raises(ParameterError):
        layered_for_pair_index(
            six_path_graph, path_matching, pair_index, W, MultipassConfig.build()
        )


def test_dump_writes_graph_and_origin(tmp_path, six_path_graph, path_matching):
    cfg = MultipassConfig.build()
    layered = layered_for_pair_index(six_path_graph, path_matching, 0, Fraction(4), cfg)
    again = layered_for_pair_index(six_path_graph, path_matching, 0, Fraction(4), cfg)
    assert layered.to_text() == again.to_text()
    assert layered.origin_text() == again.origin_text()

    output = tmp_path / "layered.txt"
    sidecar = write_layered(layered, output)
    assert sidecar == origin_path(output) == tmp_path / "layered.txt.origin"
    header, *edge_lines = output.read_text().splitlines()
    n, m = map(int, header.split())
    assert n == (layered.k + 1) * 6
    assert m == len(edge_lines) == len(sidecar.read_text().splitlines())
