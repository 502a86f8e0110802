import pexpect
import pytest


@pytest.fixture
def finish():
    def _finish(child: pexpect.spawn) -> int:
        child.expect(pexpect.EOF)
        child.close()
        return child.exitstatus

    return _finish


@pytest.fixture
def matching_file(tmp_path):
    def _matching_file(n, edges, name="matching.txt"):
        path = tmp_path / name
        lines = [f"{n} {len(edges)}"] + [f"{u} {v} {w}" for u, v, w in edges]
        path.write_text("\n".join(lines) + "\n")
        return path

    return _matching_file
