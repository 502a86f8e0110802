import contextlib
import os
from pathlib import Path
import tempfile
from typing import IO, Any, Generator


@contextlib.contextmanager
def atomic_replace(path: Path) -> Generator[IO[Any], None, None]:
    """
    Write to a sibling temp file and move it over ``path`` only when the block
    exits cleanly, so graph files and run reports are never left half-written.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, mode="w", newline="\n") as tmpfile:
            yield tmpfile
        os.replace(tmp_name, path)
    finally:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)


def write_text_output(path: Path, text: str) -> None:
    with atomic_replace(path) as output_file:
        output_file.write(text)
