import json

import pexpect

from matchstream.main import ENTRY_DESCRIPTION


def test_oracle_prints_weight_and_edges(fig1_graph, write_graph, finish):
    graph = write_graph(fig1_graph)
    child = pexpect.spawn(f"matchstream oracle {graph}")
    child.expect(ENTRY_DESCRIPTION)
    child.expect("\r\n")
    child.expect("weight=8\r\n")
    child.expect("0 2 4\r\n")
    child.expect("3 5 4\r\n")
    assert finish(child) == 0


def test_oracle_json_report(fig1_graph, write_graph, tmp_path, finish):
    graph = write_graph(fig1_graph)
    output = tmp_path / "oracle.json"
    child = pexpect.spawn(f"matchstream oracle {graph} --json --output {output}")
    child.expect(ENTRY_DESCRIPTION)
    child.expect('"algorithm": "oracle"')
    child.expect('"weight": 8')
    assert finish(child) == 0
    assert json.loads(output.read_text())["size"] == 2


def test_oracle_refuses_oversized_instances(fig1_graph, write_graph, finish):
    graph = write_graph(fig1_graph)
    child = pexpect.spawn(f"matchstream oracle {graph} --oracle-max-vertices 3")
    child.expect(ENTRY_DESCRIPTION)
    child.expect("exceeds the oracle budget of 3 vertices")
    assert finish(child) == 4


def test_oracle_takes_the_graph_file_as_a_positional_argument(finish):
    child = pexpect.spawn("matchstream oracle")
    child.expect("the following arguments are required: graph")
    assert finish(child) == 2
