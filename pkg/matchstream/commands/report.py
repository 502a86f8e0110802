import csv
import io
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from eth_utils import to_tuple

from matchstream.constants import REPORT_COLUMNS
from matchstream.exceptions import ValidationError
from matchstream.validation import validate_report_json

WEIGHT_FIELDS = ("weight", "final_weight", "size")
OPT_FIELDS = ("opt_weight", "opt", "opt_size")


def _first_present(report: Dict[str, Any], fields: Sequence[str]) -> Optional[Any]:
    for field in fields:
        if report.get(field) is not None:
            return report[field]
    return None


@to_tuple
def report_row(report: Dict[str, Any], path: Path) -> Iterable[Any]:
    weight = _first_present(report, WEIGHT_FIELDS)
    if weight is None:
        raise ValidationError(f"Run report {path} has no weight or size field.")
    opt = _first_present(report, OPT_FIELDS)
    ratio = report.get("ratio")
    if ratio is None and opt:
        ratio = weight / opt
    yield report["algorithm"]
    yield report["seed"]
    yield report["n"]
    yield report["m"]
    yield weight
    yield opt
    yield ratio
    yield report.get("passes")
    yield report.get("peak_edges")


def build_csv(paths: Sequence[Path]) -> str:
    rows = [report_row(validate_report_json(path), path) for path in paths]
    return render_csv(rows)


def render_csv(rows: Iterable[Tuple[Any, ...]]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        writer.writerow("" if value is None else value for value in row)
    return output.getvalue()
