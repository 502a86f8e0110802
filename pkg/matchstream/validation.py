from fractions import Fraction
import json
from pathlib import Path
from typing import Any, Dict, Union

from matchstream.constants import JSON_SCHEMA_VERSION
from matchstream.exceptions import ParameterError, StructuralError, ValidationError
from matchstream.graph import Matching, WeightedGraph, parse_graph_text

U64_MAX = 2 ** 64 - 1


def validate_seed(seed: int) -> None:
    if not 0 <= seed <= U64_MAX:
        raise ParameterError(f"Seed {seed} is outside the unsigned 64-bit range.")


def validate_threads(threads: Union[int, str]) -> int:
    try:
        count = int(threads)
    except ValueError:
        raise ValidationError(f"Thread count {threads!r} is not an integer.")
    if count < 1:
        raise ParameterError(f"Thread count must be at least 1, got {count}.")
    return count


def validate_memory_args(mem_c: float, mem_logk: int) -> None:
    if mem_c <= 0:
        raise ParameterError(f"--mem-c must be positive, got {mem_c}.")
    if mem_logk < 0:
        raise ParameterError(f"--mem-logk must be non-negative, got {mem_logk}.")


def validate_oracle_budget(max_vertices: int, max_edges: int) -> None:
    if max_vertices < 1 or max_edges < 1:
        raise ParameterError(
            f"Oracle budget must be positive, got {max_vertices} vertices and {max_edges} edges."
        )


def validate_open_unit_interval(name: str, value: Fraction) -> None:
    if not 0 < value < 1:
        raise ParameterError(f"{name} must lie in (0, 1), got {value}.")


def validate_graph_path(path: Path) -> None:
    if not path.is_file():
        raise ValidationError(f"Graph file: {path} does not exist.")


def validate_output_path(path: Path) -> None:
    if not path.parent.is_dir():
        raise ValidationError(f"Output directory: {path.parent} does not exist.")


def read_matching_file(path: Path, graph: WeightedGraph) -> Matching:
    """
    A matching file uses the graph file format; every listed edge must exist in
    ``graph`` with the same weight.
    """
    if not path.is_file():
        raise ValidationError(f"Matching file: {path} does not exist.")
    listed = parse_graph_text(path.read_text(), graph.weight_exponent)
    if listed.n != graph.n:
        raise ValidationError(
            f"Matching file {path} declares {listed.n} vertices, the graph has {graph.n}."
        )
    for edge in listed.edges:
        if graph.edge(edge.u, edge.v) != edge:
            raise ValidationError(f"Matching edge {edge} from {path} is not in the graph.")
    try:
        return Matching(listed.edges)
    except StructuralError:
        raise ValidationError(f"Edges in {path} share a vertex and do not form a matching.")


def validate_report_json(path: Path) -> Dict[str, Any]:
    if not path.is_file():
        raise ValidationError(f"Report file: {path} does not exist.")
    try:
        report = json.loads(path.read_text())
    except ValueError:
        raise ValidationError(f"Content found at {path} does not look like valid json.")
    if not isinstance(report, dict) or report.get("schema") != JSON_SCHEMA_VERSION:
        raise ValidationError(
            f"JSON found at {path} is not a schema {JSON_SCHEMA_VERSION} run report."
        )
    for field in ("algorithm", "seed", "n", "m"):
        if field not in report:
            raise ValidationError(f"Run report {path} is missing the {field!r} field.")
    return report
