import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from doublecover import _backend, _pykernels  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=["python", "cython"])
def kernel(request):
    """Each SNF kernel in turn; the compiled one is skipped when it was not built."""
    if request.param == "python":
        return _pykernels.snf
    if _backend._ckernels is None:
        pytest.skip("compiled kernel not built")
    return _backend._ckernels.snf


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
