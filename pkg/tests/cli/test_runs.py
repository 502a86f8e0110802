import json

import pexpect
import pytest

from matchstream.main import ENTRY_DESCRIPTION


def test_run_random_arrival_json(fig2_graph, write_graph, finish):
    graph = write_graph(fig2_graph)
    child = pexpect.spawn(
        f"matchstream run-random-arrival --graph {graph} --seed 3 --json --with-oracle"
    )
    child.expect(ENTRY_DESCRIPTION)
    child.expect('"algorithm": "random_arrival"')
    child.expect('"seed": 3')
    child.expect('"opt_weight": 30')
    assert finish(child) == 0


def test_run_random_arrival_reports_are_byte_identical(fig2_graph, write_graph, tmp_path, finish):
    graph = write_graph(fig2_graph)
    outputs = []
    for threads in (1, 4):
        output = tmp_path / f"run-{threads}.json"
        child = pexpect.spawn(
            f"matchstream run-random-arrival --graph {graph} --seed 11 "
            f"--threads {threads} --output {output}"
        )
        child.expect("Run report written to")
        assert finish(child) == 0
        outputs.append(output.read_bytes())
    assert outputs[0] == outputs[1]


def test_run_unweighted_summary(six_path_graph, write_graph, finish):
    graph = write_graph(six_path_graph)
    child = pexpect.spawn(f"matchstream run-unweighted --graph {graph} --p 1/2")
    child.expect(ENTRY_DESCRIPTION)
    child.expect("on n=6, m=5: matching of")
    child.expect("opt_size: 3")
    assert finish(child) == 0


def test_run_unweighted_rejects_invalid_rate(six_path_graph, write_graph, finish):
    graph = write_graph(six_path_graph)
    child = pexpect.spawn(f"matchstream run-unweighted --graph {graph} --p 2")
    child.expect_exact("--p must lie in (0, 1), got 2.")
    assert finish(child) == 2


def test_strict_memory_budget_aborts(six_path_graph, write_graph, finish):
    graph = write_graph(six_path_graph)
    child = pexpect.spawn(
        f"matchstream run-unweighted --graph {graph} --p 1/2 "
        "--strict-memory --mem-c 0.01 --mem-logk 0"
    )
    child.expect("over the budget of 1.")
    assert finish(child) == 3


def test_run_multipass_json(fig1_graph, write_graph, tmp_path, finish):
    graph = write_graph(fig1_graph)
    output = tmp_path / "multipass.json"
    child = pexpect.spawn(
        f"matchstream run-multipass --graph {graph} --iters 2 --with-oracle --output {output}"
    )
    child.expect(ENTRY_DESCRIPTION)
    child.expect("Run report written to")
    assert finish(child) == 0
    report = json.loads(output.read_text())
    assert report["algorithm"] == "multipass"
    assert report["opt_weight"] == 8
    assert len(report["per_iteration_gains"]) == report["iterations_run"] <= 2


@pytest.mark.parametrize("flag", ("--paper-faithful", "--strict-constants"))
def test_run_multipass_rejects_strict_constants_with_large_eps(
    flag, fig1_graph, write_graph, finish
):
    graph = write_graph(fig1_graph)
    child = pexpect.spawn(f"matchstream run-multipass --graph {graph} {flag}")
    child.expect("Strict-constants mode needs")
    assert finish(child) == 2
